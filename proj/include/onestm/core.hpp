#pragma once

// Domain model for one-state Turing machines: symbols, transition rules, the
// machine itself (input/tape alphabets, halting symbols, total transition
// table on the non-halting symbols), the two-way infinite tape, run
// configurations, machine validation, and the line-oriented machine
// definition file format.

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace onestm {

// A symbol is a single printable, non-whitespace character. '_' is reserved
// as the blank and may never be declared as an input symbol.
using Symbol = char;

inline constexpr Symbol kBlank = '_';

inline bool is_valid_symbol(char c) { return c >= '!' && c <= '~'; }

enum class Move : std::uint8_t { kLeft, kRight };

inline int move_delta(Move m) { return m == Move::kLeft ? -1 : +1; }

inline char move_letter(Move m) { return m == Move::kLeft ? 'L' : 'R'; }

struct Rule {
  Symbol write;
  Move move;

  friend bool operator==(const Rule&, const Rule&) = default;
};

enum class ValidationErrorKind {
  kBlankInInput,
  kBlankMissing,
  kInputNotInTape,
  kHaltingNotInTape,
  kMissingTransition,
  kTransitionOnHaltingSymbol,
  kWriteSymbolUnknown,
  kDuplicateRule,
  kBadSymbolLiteral,
};

inline const char* to_string(ValidationErrorKind k) {
  switch (k) {
    case ValidationErrorKind::kBlankInInput: return "blank-in-input";
    case ValidationErrorKind::kBlankMissing: return "blank-missing";
    case ValidationErrorKind::kInputNotInTape: return "input-not-in-tape";
    case ValidationErrorKind::kHaltingNotInTape: return "halting-not-in-tape";
    case ValidationErrorKind::kMissingTransition: return "missing-transition";
    case ValidationErrorKind::kTransitionOnHaltingSymbol:
      return "transition-on-halting-symbol";
    case ValidationErrorKind::kWriteSymbolUnknown: return "write-symbol-unknown";
    case ValidationErrorKind::kDuplicateRule: return "duplicate-rule";
    case ValidationErrorKind::kBadSymbolLiteral: return "bad-symbol-literal";
  }
  return "unknown";
}

struct MachineValidationError {
  ValidationErrorKind kind;
  std::string detail;  // offending symbol or token plus context
  int line = 0;        // 1-based source line, 0 when not file-derived

  friend bool operator==(const MachineValidationError&,
                         const MachineValidationError&) = default;
};

// Raw, not-yet-checked machine description. Built by the file parser or by
// hand. The tape alphabet is normally inferred as
// {blank} ∪ input ∪ halting ∪ {symbols appearing in rules}; a non-empty
// tape_alphabet is instead taken as the exact alphabet and checked against
// everything else.
struct MachineDescription {
  std::optional<Symbol> blank;
  std::vector<Symbol> input;
  std::vector<Symbol> halting;
  std::vector<std::pair<Symbol, Rule>> rules;  // declaration order
  std::vector<Symbol> tape_alphabet;           // empty = infer
};

struct ValidationResult;
ValidationResult validate(const MachineDescription& desc);

// A validated one-state machine. The single control state carries no data,
// so it is not represented. Immutable after construction; cheap to copy.
//
// Declaration order of the input alphabet, halting set and rules is
// preserved: serialization is defined in terms of it.
class OneStateMachine {
 public:
  Symbol blank() const { return blank_; }
  const std::vector<Symbol>& input_alphabet() const { return input_; }
  const std::vector<Symbol>& halting_symbols() const { return halting_; }
  // Tape alphabet in canonical first-appearance order:
  // blank, input, halting, rule symbols.
  const std::vector<Symbol>& tape_alphabet() const { return tape_; }
  const std::vector<std::pair<Symbol, Rule>>& rules() const { return rules_; }

  bool in_input(Symbol s) const { return ascii(s) && (flag(s) & kInInput); }
  bool in_tape(Symbol s) const { return ascii(s) && (flag(s) & kInTape); }
  bool is_halting(Symbol s) const { return ascii(s) && (flag(s) & kInHalting); }

  // Null exactly for halting symbols and symbols outside the tape alphabet.
  const Rule* rule_for(Symbol s) const {
    if (!ascii(s)) return nullptr;
    auto i = index(s);
    return has_rule_[i] ? &rule_table_[i] : nullptr;
  }

  friend bool operator==(const OneStateMachine& a, const OneStateMachine& b) {
    return a.blank_ == b.blank_ && a.input_ == b.input_ &&
           a.halting_ == b.halting_ && a.tape_ == b.tape_ &&
           a.rules_ == b.rules_;
  }

 private:
  friend ValidationResult validate(const MachineDescription& desc);

  OneStateMachine() = default;

  static bool ascii(Symbol s) { return static_cast<unsigned char>(s) < 128; }
  static std::size_t index(Symbol s) { return static_cast<unsigned char>(s); }
  std::uint8_t flag(Symbol s) const { return flags_[index(s)]; }

  static constexpr std::uint8_t kInInput = 1;
  static constexpr std::uint8_t kInHalting = 2;
  static constexpr std::uint8_t kInTape = 4;

  Symbol blank_ = kBlank;
  std::vector<Symbol> input_;
  std::vector<Symbol> halting_;
  std::vector<Symbol> tape_;
  std::vector<std::pair<Symbol, Rule>> rules_;
  std::array<std::uint8_t, 128> flags_{};
  std::array<bool, 128> has_rule_{};
  std::array<Rule, 128> rule_table_{};
};

struct ValidationResult {
  std::optional<OneStateMachine> machine;  // engaged iff errors is empty
  std::vector<MachineValidationError> errors;

  bool ok() const { return machine.has_value(); }
};

namespace detail {

// Rolling polynomial hash over the tight tape content, first cell at the
// highest power. Kept incrementally updatable from both ends and in the
// interior, which makes canonical-configuration hashing O(1) per step.
inline constexpr std::uint64_t kHashBase = 0x100000001b3ULL;  // odd

inline constexpr std::uint64_t inverse_mod_2_64(std::uint64_t b) {
  std::uint64_t x = 1;
  for (int i = 0; i < 6; ++i) x *= 2 - b * x;  // Newton; exact for odd b
  return x;
}

inline constexpr std::uint64_t kHashBaseInv = inverse_mod_2_64(kHashBase);

static_assert(kHashBase * kHashBaseInv == 1);

}  // namespace detail

// Two-way infinite tape. Only the tight interval [lo, hi] is stored; cells
// outside it are implicitly blank. Invariant: if non-empty, the cells at lo
// and hi are non-blank (interior blanks are allowed). Two tapes are equal
// iff their tight intervals and contents are equal.
class Tape {
 public:
  explicit Tape(Symbol blank = kBlank) : blank_(blank) {}

  Symbol blank() const { return blank_; }
  bool empty() const { return cells_.empty(); }
  std::size_t length() const { return cells_.size(); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(cells_.size()) - 1; }

  Symbol at(std::int64_t i) const {
    if (cells_.empty() || i < lo_ || i > hi()) return blank_;
    return cells_[static_cast<std::size_t>(i - lo_)];
  }

  void set(std::int64_t i, Symbol s) {
    if (s == blank_) {
      erase(i);
      return;
    }
    if (cells_.empty()) {
      cells_.push_back(s);
      lo_ = i;
      hash_ = static_cast<unsigned char>(s);
      return;
    }
    if (i >= lo_ && i <= hi()) {
      auto& cell = cells_[static_cast<std::size_t>(i - lo_)];
      hash_ += (static_cast<std::uint64_t>(static_cast<unsigned char>(s)) -
                static_cast<std::uint64_t>(static_cast<unsigned char>(cell))) *
               power(static_cast<std::size_t>(hi() - i));
      cell = s;
      return;
    }
    while (i > hi() + 1) push_back(blank_);
    if (i == hi() + 1) {
      push_back(s);
      return;
    }
    while (i < lo_ - 1) push_front(blank_);
    push_front(s);
  }

  // Content of the inclusive cell span [from, to]; implicit blanks filled in.
  std::string window(std::int64_t from, std::int64_t to) const {
    std::string out;
    for (std::int64_t i = from; i <= to; ++i) out.push_back(at(i));
    return out;
  }

  std::string content() const { return {cells_.begin(), cells_.end()}; }

  // Hash of the tight content, independent of absolute position. 0 if empty.
  std::uint64_t content_hash() const { return hash_; }

  friend bool operator==(const Tape& a, const Tape& b) {
    if (a.cells_.empty() || b.cells_.empty())
      return a.cells_.empty() && b.cells_.empty();
    return a.lo_ == b.lo_ && a.hash_ == b.hash_ && a.cells_ == b.cells_;
  }

 private:
  void push_back(Symbol s) {
    hash_ = hash_ * detail::kHashBase + static_cast<unsigned char>(s);
    cells_.push_back(s);
  }
  void push_front(Symbol s) {
    hash_ += static_cast<std::uint64_t>(static_cast<unsigned char>(s)) *
             power(cells_.size());
    cells_.push_front(s);
    --lo_;
  }
  void pop_back() {
    hash_ = (hash_ - static_cast<unsigned char>(cells_.back())) *
            detail::kHashBaseInv;
    cells_.pop_back();
  }
  void pop_front() {
    hash_ -= static_cast<std::uint64_t>(
                 static_cast<unsigned char>(cells_.front())) *
             power(cells_.size() - 1);
    cells_.pop_front();
    ++lo_;
  }

  void erase(std::int64_t i) {
    if (cells_.empty() || i < lo_ || i > hi()) return;  // already blank
    if (i > lo_ && i < hi()) {
      set_interior_blank(i);
      return;
    }
    if (i == lo_) {
      pop_front();
      while (!cells_.empty() && cells_.front() == blank_) pop_front();
    } else {
      pop_back();
      while (!cells_.empty() && cells_.back() == blank_) pop_back();
    }
    if (cells_.empty()) {
      lo_ = 0;
      hash_ = 0;
    }
  }

  void set_interior_blank(std::int64_t i) {
    auto& cell = cells_[static_cast<std::size_t>(i - lo_)];
    hash_ += (static_cast<std::uint64_t>(static_cast<unsigned char>(blank_)) -
              static_cast<std::uint64_t>(static_cast<unsigned char>(cell))) *
             power(static_cast<std::size_t>(hi() - i));
    cell = blank_;
  }

  std::uint64_t power(std::size_t k) const {
    while (pow_.size() <= k) pow_.push_back(pow_.back() * detail::kHashBase);
    return pow_[k];
  }

  std::deque<Symbol> cells_;
  std::int64_t lo_ = 0;
  std::uint64_t hash_ = 0;
  Symbol blank_ = kBlank;
  mutable std::vector<std::uint64_t> pow_{1};
};

// The entire runtime state of a machine: tape, head cell, steps taken.
struct Configuration {
  Tape tape;
  std::int64_t head = 0;
  std::uint64_t steps = 0;

  Symbol symbol_under_head() const { return tape.at(head); }

  // Head position relative to the tight interval; 0 for an all-blank tape
  // (two all-blank configurations are equivalent wherever the head sits).
  std::int64_t head_offset() const {
    return tape.empty() ? 0 : head - tape.lo();
  }
};

// Translation-invariant identity of a configuration: tight content plus the
// head offset. Step count is deliberately excluded.
struct CanonicalConfiguration {
  std::string content;
  std::int64_t head_offset;

  friend bool operator==(const CanonicalConfiguration&,
                         const CanonicalConfiguration&) = default;
};

inline CanonicalConfiguration canonical(const Configuration& c) {
  return {c.tape.content(), c.head_offset()};
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace detail

// 64-bit fingerprint of canonical(c); collisions must be confirmed.
inline std::uint64_t canonical_key(const Configuration& c) {
  std::uint64_t h = c.tape.content_hash();
  h = detail::mix64(h ^ (0x9e3779b97f4a7c15ULL + c.tape.length()));
  h = detail::mix64(h ^ static_cast<std::uint64_t>(c.head_offset()) *
                            0xff51afd7ed558ccdULL);
  return h;
}

namespace detail {

inline void require_symbol_literal(Symbol s, const std::string& where, int line,
                                   std::vector<MachineValidationError>& errors) {
  if (!is_valid_symbol(s)) {
    errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                      where + ": symbol is not a printable non-whitespace character",
                      line});
  }
}

}  // namespace detail

// Checks every machine invariant, accumulating all violations instead of
// stopping at the first. On success the returned machine satisfies:
//   blank ∈ Γ, Σ ⊆ Γ, blank ∉ Σ, H ⊆ Γ,
//   transitions defined for exactly Γ \ H, every written symbol ∈ Γ.
inline ValidationResult validate(const MachineDescription& desc) {
  ValidationResult result;
  auto& errors = result.errors;

  Symbol blank = kBlank;
  if (!desc.blank.has_value()) {
    errors.push_back({ValidationErrorKind::kBlankMissing,
                      "no blank symbol declared", 0});
  } else if (*desc.blank != kBlank) {
    errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                      std::string("blank symbol must be '_', got '") +
                          *desc.blank + "'",
                      0});
  }

  for (Symbol s : desc.input)
    detail::require_symbol_literal(s, std::string("input symbol '") + s + "'",
                                   0, errors);
  for (Symbol s : desc.halting)
    detail::require_symbol_literal(s, std::string("halting symbol '") + s + "'",
                                   0, errors);
  for (const auto& [read, rule] : desc.rules) {
    detail::require_symbol_literal(read, std::string("rule symbol '") + read + "'",
                                   0, errors);
    detail::require_symbol_literal(
        rule.write, std::string("written symbol '") + rule.write + "'", 0,
        errors);
  }
  for (Symbol s : desc.tape_alphabet)
    detail::require_symbol_literal(s, std::string("tape symbol '") + s + "'", 0,
                                   errors);

  auto contains = [](const std::vector<Symbol>& v, Symbol s) {
    for (Symbol e : v)
      if (e == s) return true;
    return false;
  };

  // De-duplicated declaration-order views of the declared sets.
  std::vector<Symbol> input, halting;
  for (Symbol s : desc.input)
    if (!contains(input, s)) input.push_back(s);
  for (Symbol s : desc.halting)
    if (!contains(halting, s)) halting.push_back(s);

  if (contains(input, blank)) {
    errors.push_back({ValidationErrorKind::kBlankInInput,
                      "the blank '_' may not be an input symbol", 0});
  }

  // First rule per symbol wins; later ones are duplicates.
  std::vector<std::pair<Symbol, Rule>> rules;
  for (const auto& entry : desc.rules) {
    bool seen = false;
    for (const auto& kept : rules)
      if (kept.first == entry.first) {
        seen = true;
        break;
      }
    if (seen) {
      errors.push_back({ValidationErrorKind::kDuplicateRule,
                        std::string("more than one rule for symbol '") +
                            entry.first + "'",
                        0});
    } else {
      rules.push_back(entry);
    }
  }

  // Canonical tape alphabet: first appearance among blank, Σ, H, rule
  // symbols. A valid explicitly-declared alphabet always equals this set.
  std::vector<Symbol> tape;
  auto add_tape = [&](Symbol s) {
    if (!contains(tape, s)) tape.push_back(s);
  };
  add_tape(blank);
  for (Symbol s : input) add_tape(s);
  for (Symbol s : halting) add_tape(s);
  for (const auto& [read, rule] : rules) {
    add_tape(read);
    add_tape(rule.write);
  }

  if (!desc.tape_alphabet.empty()) {
    auto declared = [&](Symbol s) { return contains(desc.tape_alphabet, s); };
    if (!declared(blank))
      errors.push_back({ValidationErrorKind::kBlankMissing,
                        "blank '_' not in the declared tape alphabet", 0});
    for (Symbol s : input)
      if (!declared(s))
        errors.push_back({ValidationErrorKind::kInputNotInTape,
                          std::string("input symbol '") + s +
                              "' not in the declared tape alphabet",
                          0});
    for (Symbol s : halting)
      if (!declared(s))
        errors.push_back({ValidationErrorKind::kHaltingNotInTape,
                          std::string("halting symbol '") + s +
                              "' not in the declared tape alphabet",
                          0});
    for (const auto& [read, rule] : rules) {
      if (!declared(rule.write))
        errors.push_back({ValidationErrorKind::kWriteSymbolUnknown,
                          std::string("rule for '") + read +
                              "' writes '" + rule.write +
                              "' which is not in the declared tape alphabet",
                          0});
      if (!declared(read))
        errors.push_back({ValidationErrorKind::kWriteSymbolUnknown,
                          std::string("rule reads '") + read +
                              "' which is not in the declared tape alphabet",
                          0});
    }
    for (Symbol s : desc.tape_alphabet) add_tape(s);
  }

  for (const auto& [read, rule] : rules) {
    if (contains(halting, read))
      errors.push_back({ValidationErrorKind::kTransitionOnHaltingSymbol,
                        std::string("rule declared for halting symbol '") +
                            read + "'",
                        0});
  }
  for (Symbol s : tape) {
    if (contains(halting, s)) continue;
    bool has = false;
    for (const auto& [read, rule] : rules)
      if (read == s) {
        has = true;
        break;
      }
    if (!has)
      errors.push_back({ValidationErrorKind::kMissingTransition,
                        std::string("no rule for tape symbol '") + s + "'", 0});
  }

  if (!errors.empty()) return result;

  OneStateMachine m;
  m.blank_ = blank;
  m.input_ = std::move(input);
  m.halting_ = std::move(halting);
  m.tape_ = std::move(tape);
  m.rules_ = std::move(rules);
  m.flags_[OneStateMachine::index(blank)] |= OneStateMachine::kInTape;
  for (Symbol s : m.input_)
    m.flags_[OneStateMachine::index(s)] |= OneStateMachine::kInInput;
  for (Symbol s : m.halting_)
    m.flags_[OneStateMachine::index(s)] |= OneStateMachine::kInHalting;
  for (Symbol s : m.tape_)
    m.flags_[OneStateMachine::index(s)] |= OneStateMachine::kInTape;
  for (const auto& [read, rule] : m.rules_) {
    m.has_rule_[OneStateMachine::index(read)] = true;
    m.rule_table_[OneStateMachine::index(read)] = rule;
  }
  result.machine = std::move(m);
  return result;
}

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace detail

// Parses the line-oriented machine definition format:
//   # comment
//   blank _
//   input u 0 h
//   halt h
//   rule u U R
// The tape alphabet is inferred. Parse errors and validation errors are
// accumulated together.
inline ValidationResult parse_machine(std::string_view text) {
  MachineDescription desc;
  std::vector<MachineValidationError> parse_errors;

  auto symbol_token = [&](const std::string& tok, int line,
                          const char* what) -> std::optional<Symbol> {
    if (tok.size() != 1 || !is_valid_symbol(tok[0])) {
      parse_errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                              std::string(what) + " '" + tok +
                                  "' is not a single printable character",
                              line});
      return std::nullopt;
    }
    return tok[0];
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto tokens = detail::tokenize(raw);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    const std::string& directive = tokens[0];
    if (directive == "blank") {
      if (desc.blank.has_value()) {
        parse_errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                                "blank declared more than once", line_no});
        continue;
      }
      if (tokens.size() != 2) {
        parse_errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                                "blank line takes exactly one symbol", line_no});
        continue;
      }
      if (auto s = symbol_token(tokens[1], line_no, "blank symbol"))
        desc.blank = *s;
    } else if (directive == "input") {
      for (std::size_t i = 1; i < tokens.size(); ++i)
        if (auto s = symbol_token(tokens[i], line_no, "input symbol"))
          desc.input.push_back(*s);
    } else if (directive == "halt") {
      for (std::size_t i = 1; i < tokens.size(); ++i)
        if (auto s = symbol_token(tokens[i], line_no, "halting symbol"))
          desc.halting.push_back(*s);
    } else if (directive == "rule") {
      if (tokens.size() != 4) {
        parse_errors.push_back(
            {ValidationErrorKind::kBadSymbolLiteral,
             "rule line must be 'rule <read> <write> <L|R>'", line_no});
        continue;
      }
      auto read = symbol_token(tokens[1], line_no, "rule read symbol");
      auto write = symbol_token(tokens[2], line_no, "rule write symbol");
      std::optional<Move> move;
      if (tokens[3] == "L")
        move = Move::kLeft;
      else if (tokens[3] == "R")
        move = Move::kRight;
      else
        parse_errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                                "move '" + tokens[3] + "' must be L or R",
                                line_no});
      if (read && write && move)
        desc.rules.emplace_back(*read, Rule{*write, *move});
    } else {
      parse_errors.push_back({ValidationErrorKind::kBadSymbolLiteral,
                              "unknown directive '" + directive + "'",
                              line_no});
    }
  }

  ValidationResult result = validate(desc);
  if (!parse_errors.empty()) {
    parse_errors.insert(parse_errors.end(), result.errors.begin(),
                        result.errors.end());
    result.errors = std::move(parse_errors);
    result.machine.reset();
  }
  return result;
}

// Byte-stable serialization: blank line, then input and halt lines (omitted
// when their sets are empty), then rules in declaration order.
// parse_machine(serialize_machine(m)) reconstructs m exactly.
inline std::string serialize_machine(const OneStateMachine& m) {
  std::string out;
  out += "blank ";
  out += m.blank();
  out += '\n';
  if (!m.input_alphabet().empty()) {
    out += "input";
    for (Symbol s : m.input_alphabet()) {
      out += ' ';
      out += s;
    }
    out += '\n';
  }
  if (!m.halting_symbols().empty()) {
    out += "halt";
    for (Symbol s : m.halting_symbols()) {
      out += ' ';
      out += s;
    }
    out += '\n';
  }
  for (const auto& [read, rule] : m.rules()) {
    out += "rule ";
    out += read;
    out += ' ';
    out += rule.write;
    out += ' ';
    out += move_letter(rule.move);
    out += '\n';
  }
  return out;
}

}  // namespace onestm
