#include <catch2/catch.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "onestm/builders.hpp"
#include "onestm/core.hpp"
#include "test_support.hpp"

using namespace onestm;

namespace {

bool has_error(const ValidationResult& result, ValidationErrorKind kind) {
  return std::any_of(result.errors.begin(), result.errors.end(),
                     [&](const MachineValidationError& e) { return e.kind == kind; });
}

bool has_error(const ValidationResult& result, ValidationErrorKind kind,
               const std::string& needle) {
  return std::any_of(result.errors.begin(), result.errors.end(),
                     [&](const MachineValidationError& e) {
                       return e.kind == kind &&
                              e.detail.find(needle) != std::string::npos;
                     });
}

MachineDescription mcc_description() {
  MachineDescription desc;
  desc.blank = kBlank;
  desc.input = {'u', '0', 'h'};
  desc.halting = {'h'};
  desc.rules = {{'u', {'U', Move::kRight}}, {'0', {'1', Move::kLeft}},
                {'U', {'C', Move::kRight}}, {'1', {'Z', Move::kRight}},
                {'Z', {'0', Move::kLeft}},  {'C', {'B', Move::kLeft}},
                {'B', {'C', Move::kRight}}, {'_', {'_', Move::kLeft}}};
  return desc;
}

constexpr const char* kCanonicalMcc =
    "blank _\n"
    "input u 0 h\n"
    "halt h\n"
    "rule u U R\n"
    "rule 0 1 L\n"
    "rule U C R\n"
    "rule 1 Z R\n"
    "rule Z 0 L\n"
    "rule C B L\n"
    "rule B C R\n"
    "rule _ _ L\n";

}  // namespace

TEST_CASE("validate accepts the comparator table") {
  ValidationResult result = validate(mcc_description());
  REQUIRE(result.ok());
  const OneStateMachine& m = *result.machine;
  CHECK(m.tape_alphabet().size() == 9);  // blank plus eight working symbols
  CHECK(m.halting_symbols() == std::vector<Symbol>{'h'});
  CHECK(m.blank() == '_');
  CHECK(m.in_tape('Z'));
  CHECK(m.rule_for('h') == nullptr);
  REQUIRE(m.rule_for('u') != nullptr);
  CHECK(*m.rule_for('u') == Rule{'U', Move::kRight});
}

TEST_CASE("validate reports a missing transition") {
  MachineDescription desc = mcc_description();
  desc.rules.erase(
      std::find_if(desc.rules.begin(), desc.rules.end(),
                   [](const auto& r) { return r.first == 'B'; }));
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kMissingTransition, "'B'"));
}

TEST_CASE("validate rejects the blank as an input symbol") {
  MachineDescription desc = mcc_description();
  desc.input.push_back('_');
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kBlankInInput));
}

TEST_CASE("validate accumulates every violation") {
  MachineDescription desc;
  desc.input = {'_', 'a'};
  desc.rules = {{'a', {'a', Move::kLeft}}, {'a', {'a', Move::kRight}}};
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kBlankMissing));
  CHECK(has_error(result, ValidationErrorKind::kBlankInInput));
  CHECK(has_error(result, ValidationErrorKind::kDuplicateRule));
  CHECK(has_error(result, ValidationErrorKind::kMissingTransition, "'_'"));
}

TEST_CASE("validate rejects rules on halting symbols") {
  MachineDescription desc = mcc_description();
  desc.rules.emplace_back('h', Rule{'h', Move::kLeft});
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kTransitionOnHaltingSymbol));
}

TEST_CASE("validate rejects non-printable symbols") {
  MachineDescription desc = mcc_description();
  desc.input.push_back('\t');
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kBadSymbolLiteral));
}

TEST_CASE("validate checks an explicitly declared tape alphabet") {
  MachineDescription desc;
  desc.blank = kBlank;
  desc.input = {'a'};
  desc.halting = {'k'};
  desc.rules = {{'a', {'q', Move::kRight}}, {'_', {'_', Move::kLeft}}};
  desc.tape_alphabet = {'_', 'q'};
  ValidationResult result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kInputNotInTape, "'a'"));
  CHECK(has_error(result, ValidationErrorKind::kHaltingNotInTape, "'k'"));

  desc.tape_alphabet = {'_', 'a', 'k'};
  result = validate(desc);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kWriteSymbolUnknown, "'q'"));
}

TEST_CASE("parse_machine reads the canonical comparator file") {
  ValidationResult result = parse_machine(kCanonicalMcc);
  REQUIRE(result.ok());
  CHECK(*result.machine == build_mcc());
}

TEST_CASE("parse_machine on an empty document reports what is missing") {
  ValidationResult result = parse_machine("");
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kBlankMissing));
  // With nothing declared the inferred alphabet is just the blank, which
  // then lacks a transition.
  CHECK(has_error(result, ValidationErrorKind::kMissingTransition));
}

TEST_CASE("parse_machine rejects a duplicated rule") {
  std::string text = std::string(kCanonicalMcc) + "rule u U R\n";
  ValidationResult result = parse_machine(text);
  REQUIRE_FALSE(result.ok());
  CHECK(has_error(result, ValidationErrorKind::kDuplicateRule, "'u'"));
}

TEST_CASE("parse_machine reports malformed lines with their line number") {
  ValidationResult result = parse_machine(
      "blank _\n"
      "halt h\n"
      "rule ab x R\n"
      "rule _ _ Q\n"
      "bogus y\n");
  REQUIRE_FALSE(result.ok());
  REQUIRE(has_error(result, ValidationErrorKind::kBadSymbolLiteral, "'ab'"));
  for (const auto& e : result.errors) {
    if (e.detail.find("'ab'") != std::string::npos) CHECK(e.line == 3);
    if (e.detail.find("must be L or R") != std::string::npos) CHECK(e.line == 4);
    if (e.detail.find("bogus") != std::string::npos) CHECK(e.line == 5);
  }
}

TEST_CASE("parse_machine skips comments and empty lines") {
  std::string text = "# comparator\n\n" + std::string(kCanonicalMcc) + "\n# end\n";
  ValidationResult result = parse_machine(text);
  REQUIRE(result.ok());
  CHECK(*result.machine == build_mcc());
}

TEST_CASE("serialize_machine emits the canonical comparator file") {
  OneStateMachine m = build_mcc();
  CHECK(serialize_machine(m) == kCanonicalMcc);
  CHECK(serialize_machine(m) == serialize_machine(m));
}

TEST_CASE("serialize_machine omits empty header lines") {
  MachineDescription desc;
  desc.blank = kBlank;
  desc.halting = {'h'};
  desc.rules = {{'_', {'_', Move::kLeft}}};
  ValidationResult result = validate(desc);
  REQUIRE(result.ok());
  CHECK(serialize_machine(*result.machine) ==
        "blank _\n"
        "halt h\n"
        "rule _ _ L\n");
}

TEST_CASE("machine serialization round-trips") {
  std::mt19937 rng(20240817);
  for (int i = 0; i < 250; ++i) {
    OneStateMachine m = onestm::testing::random_machine(rng, 6);
    ValidationResult reparsed = parse_machine(serialize_machine(m));
    REQUIRE(reparsed.ok());
    CHECK(*reparsed.machine == m);
    // One round trip is already canonical.
    CHECK(serialize_machine(*reparsed.machine) == serialize_machine(m));
  }
}

TEST_CASE("tape keeps its interval tight and position-aware equality") {
  Tape t;
  CHECK(t.empty());
  t.set(3, 'a');
  CHECK(t.lo() == 3);
  CHECK(t.hi() == 3);
  t.set(6, 'b');
  CHECK(t.window(3, 6) == "a__b");
  t.set(6, '_');
  CHECK(t.hi() == 3);
  t.set(3, '_');
  CHECK(t.empty());

  Tape a, b;
  a.set(0, 'x');
  b.set(1, 'x');
  CHECK_FALSE(a == b);  // same content, different cells
  b.set(1, '_');
  b.set(0, 'x');
  CHECK(a == b);
}

TEST_CASE("tape erasure exposes interior blanks one end at a time") {
  Tape t;
  t.set(0, 'a');
  t.set(1, '_');  // no-op beyond the interval edge handling
  t.set(2, 'b');
  t.set(4, 'c');
  REQUIRE(t.window(0, 4) == "a_b_c");
  t.set(0, '_');
  CHECK(t.lo() == 2);
  CHECK(t.window(2, 4) == "b_c");
  t.set(4, '_');
  CHECK(t.lo() == 2);
  CHECK(t.hi() == 2);
}

TEST_CASE("tape content hash matches a from-scratch recomputation") {
  auto reference_hash = [](const std::string& content) {
    std::uint64_t h = 0;
    for (char c : content)
      h = h * onestm::detail::kHashBase + static_cast<unsigned char>(c);
    return h;
  };
  std::mt19937 rng(7);
  Tape t;
  for (int i = 0; i < 5000; ++i) {
    std::int64_t cell = static_cast<std::int64_t>(rng() % 60) - 30;
    Symbol s = "_ab"[rng() % 3];
    t.set(cell, s);
    if (t.empty()) {
      CHECK(t.content_hash() == 0);
    } else {
      CHECK(t.content_hash() == reference_hash(t.content()));
      CHECK(t.content().front() != '_');
      CHECK(t.content().back() != '_');
    }
  }
}

TEST_CASE("canonical configurations are translation invariant") {
  Configuration a, b;
  a.tape.set(0, 'x');
  a.head = -2;
  b.tape.set(5, 'x');
  b.head = 3;
  CHECK(canonical(a) == canonical(b));
  CHECK(canonical_key(a) == canonical_key(b));

  b.head = 4;
  CHECK_FALSE(canonical(a) == canonical(b));

  Configuration empty1, empty2;
  empty1.head = -7;
  empty2.head = 9;
  CHECK(canonical(empty1) == canonical(empty2));
}
