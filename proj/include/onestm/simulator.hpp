#pragma once

// Step-exact execution of a one-state machine: initial configuration,
// single-step transition, fuel-bounded running with pluggable divergence
// detectors, and the three-characters-per-cell trace rendering.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onestm/core.hpp"

namespace onestm {

class InputSymbolError : public std::invalid_argument {
 public:
  InputSymbolError(Symbol symbol, std::size_t position)
      : std::invalid_argument(std::string("input symbol '") + symbol +
                              "' at position " + std::to_string(position) +
                              " is not in the input alphabet"),
        symbol(symbol),
        position(position) {}

  Symbol symbol;
  std::size_t position;
};

// Input occupies cells 0..len-1, head on the leftmost cell. The empty input
// yields an empty tape with the head on a blank at cell 0.
inline Configuration init(const OneStateMachine& m, std::string_view input) {
  for (std::size_t i = 0; i < input.size(); ++i)
    if (!m.in_input(input[i])) throw InputSymbolError(input[i], i);
  Configuration c;
  c.tape = Tape(m.blank());
  for (std::size_t i = 0; i < input.size(); ++i)
    c.tape.set(static_cast<std::int64_t>(i), input[i]);
  return c;
}

inline bool is_halted(const OneStateMachine& m, const Configuration& c) {
  return m.is_halting(c.symbol_under_head());
}

enum class StepStatus : std::uint8_t { kContinue, kHalted };

// Applies the unique rule for the symbol under the head: write, move, count.
// A configuration whose head is on a halting symbol is a fixed point: the
// call reports kHalted and leaves it untouched.
inline StepStatus step(const OneStateMachine& m, Configuration& c) {
  Symbol read = c.symbol_under_head();
  if (m.is_halting(read)) return StepStatus::kHalted;
  const Rule* rule = m.rule_for(read);
  c.tape.set(c.head, rule->write);
  c.head += move_delta(rule->move);
  ++c.steps;
  return StepStatus::kContinue;
}

struct DivergenceReason {
  enum class Kind { kBlankEscape, kExactCycle, kTranslatedCycle };

  Kind kind{};
  // Exact cycle: the two steps whose configurations coincide.
  // Translated cycle: the two record-breaking steps whose tape windows
  // coincide, plus the per-period head shift.
  std::uint64_t first_step = 0;
  std::uint64_t second_step = 0;
  std::int64_t shift = 0;
};

inline const char* to_string(DivergenceReason::Kind k) {
  switch (k) {
    case DivergenceReason::Kind::kBlankEscape: return "blank-escape";
    case DivergenceReason::Kind::kExactCycle: return "exact-cycle";
    case DivergenceReason::Kind::kTranslatedCycle: return "translated-cycle";
  }
  return "unknown";
}

struct RunOutcome {
  enum class Kind { kHalted, kDiverged, kFuelExhausted };

  Kind kind{};
  // kHalted: steps to reach the halting symbol; kDiverged: detection step;
  // kFuelExhausted: the fuel that ran out.
  std::uint64_t steps = 0;
  std::optional<DivergenceReason> reason;

  bool halted() const { return kind == Kind::kHalted; }
  bool diverged() const { return kind == Kind::kDiverged; }
  bool fuel_exhausted() const { return kind == Kind::kFuelExhausted; }
};

// Renders the inclusive cell span [lo, hi]: three characters per cell,
// ` x ` normally and `[x]` under the head, trailing whitespace trimmed.
inline std::string render_window(const Configuration& c, std::int64_t lo,
                                 std::int64_t hi) {
  std::string out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1) * 3);
  for (std::int64_t i = lo; i <= hi; ++i) {
    bool under_head = i == c.head;
    out.push_back(under_head ? '[' : ' ');
    out.push_back(c.tape.at(i));
    out.push_back(under_head ? ']' : ' ');
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

inline std::string render(const Configuration& c) {
  std::int64_t lo = c.head, hi = c.head;
  if (!c.tape.empty()) {
    lo = std::min(lo, c.tape.lo());
    hi = std::max(hi, c.tape.hi());
  }
  return render_window(c, lo - 1, hi + 1);
}

namespace detail {

// Core driver shared by run and trace. Detectors are stateful callables
// `optional<DivergenceReason>(const OneStateMachine&, const Configuration&)`
// invoked once per configuration, in argument order, after the halting check
// and before the fuel check; the first to return a reason ends the run.
template <typename OnConfiguration, typename... Detectors>
RunOutcome drive(const OneStateMachine& m, std::string_view input,
                 std::uint64_t fuel, OnConfiguration&& on_configuration,
                 Detectors&&... detectors) {
  Configuration c = init(m, input);
  for (;;) {
    on_configuration(c);
    if (is_halted(m, c))
      return {RunOutcome::Kind::kHalted, c.steps, std::nullopt};
    std::optional<DivergenceReason> fired;
    [[maybe_unused]] auto probe = [&](auto&& detector) {
      if (!fired) fired = detector(m, c);
    };
    (probe(detectors), ...);
    if (fired) return {RunOutcome::Kind::kDiverged, c.steps, fired};
    if (c.steps >= fuel)
      return {RunOutcome::Kind::kFuelExhausted, fuel, std::nullopt};
    step(m, c);
  }
}

}  // namespace detail

// Deterministic fuel-bounded run. With no detectors this is the plain
// simulator: it can only halt or exhaust its fuel.
template <typename... Detectors>
RunOutcome run(const OneStateMachine& m, std::string_view input,
               std::uint64_t fuel, Detectors&&... detectors) {
  return detail::drive(
      m, input, fuel, [](const Configuration&) {},
      std::forward<Detectors>(detectors)...);
}

struct TraceResult {
  std::vector<std::string> lines;  // one per configuration, steps 0..end
  RunOutcome outcome;
};

// One rendered line per configuration, final configuration included. The
// window starts at the initial input placement and only ever grows: it is
// extended whenever the head leaves it. This is the golden-file format.
template <typename... Detectors>
TraceResult trace(const OneStateMachine& m, std::string_view input,
                  std::uint64_t fuel, Detectors&&... detectors) {
  TraceResult result;
  std::int64_t base_lo = 0;
  std::int64_t base_hi =
      input.empty() ? 0 : static_cast<std::int64_t>(input.size()) - 1;
  result.outcome = detail::drive(
      m, input, fuel,
      [&](const Configuration& c) {
        base_lo = std::min(base_lo, c.head);
        base_hi = std::max(base_hi, c.head);
        result.lines.push_back(render_window(c, base_lo - 1, base_hi + 1));
      },
      std::forward<Detectors>(detectors)...);
  return result;
}

}  // namespace onestm
