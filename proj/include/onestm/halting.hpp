#pragma once

// Sound divergence detection. A one-state machine rejects by running
// forever, so rejection is only ever established by a proof of non-halting.
// Three detectors are implemented, each backed by a self-sustainment or
// repetition argument; together with fuel they yield a three-valued decider:
// Halts / Diverges are definitive, Unknown is an honest failure to decide.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "onestm/core.hpp"
#include "onestm/simulator.hpp"

namespace onestm {

// True iff the head sits on a blank strictly outside the tight interval and
// the blank rule moves further away, or the tape is all-blank and the blank
// is not halting. Once true the predicate holds in every later
// configuration, so the machine never halts:
//  - outside case: the head only ever sees blanks further out, and the blank
//    rule keeps moving it away (any symbol it writes is left behind);
//  - all-blank case: the head reads blanks forever, since the single blank
//    rule always moves off the cell just written.
inline bool detect_blank_escape(const OneStateMachine& m,
                                const Configuration& c) {
  if (m.is_halting(m.blank())) return false;
  const Rule* blank_rule = m.rule_for(m.blank());
  if (blank_rule == nullptr) return false;  // unreachable for valid machines
  if (c.tape.empty()) return true;
  if (c.head < c.tape.lo()) return blank_rule->move == Move::kLeft;
  if (c.head > c.tape.hi()) return blank_rule->move == Move::kRight;
  return false;
}

struct BlankEscapeDetector {
  std::optional<DivergenceReason> operator()(const OneStateMachine& m,
                                             const Configuration& c) const {
    if (!detect_blank_escape(m, c)) return std::nullopt;
    return DivergenceReason{DivergenceReason::Kind::kBlankEscape, c.steps,
                            c.steps, 0};
  }
};

// Detects an exact revisit of an earlier configuration: a deterministic
// system that repeats a configuration loops forever. Configurations are
// keyed by their translation-invariant canonical form (tight tape content
// plus head offset), hashed incrementally by the tape. A hash hit is
// confirmed by replaying the run to the recorded step and comparing the full
// canonical forms, so collisions can never produce a false verdict.
class ExactCycleDetector {
 public:
  ExactCycleDetector(const OneStateMachine& machine, std::string_view input)
      : machine_(&machine), input_(input) {}

  std::optional<DivergenceReason> operator()(const OneStateMachine&,
                                             const Configuration& c) {
    std::uint64_t key = canonical_key(c);
    auto it = seen_.find(key);
    if (it != seen_.end() && confirm(c, it->second)) {
      return DivergenceReason{DivergenceReason::Kind::kExactCycle, it->second,
                              c.steps, 0};
    }
    // Beyond the dense prefix the history is sampled; any cycle is still
    // caught, at most 64 periods later.
    if (it == seen_.end() &&
        (c.steps < kDenseHistorySteps || c.steps % kSampleStride == 0)) {
      seen_.emplace(key, c.steps);
    }
    return std::nullopt;
  }

 private:
  static constexpr std::uint64_t kDenseHistorySteps = 1 << 16;
  static constexpr std::uint64_t kSampleStride = 64;

  bool confirm(const Configuration& c, std::uint64_t earlier_step) const {
    Configuration replay = init(*machine_, input_);
    for (std::uint64_t i = 0; i < earlier_step; ++i) step(*machine_, replay);
    return canonical(replay) == canonical(c);
  }

  const OneStateMachine* machine_;
  std::string input_;
  std::unordered_map<std::uint64_t, std::uint64_t> seen_;
};

// Detects runs that repeat shifted along the tape while growing it, which
// exact-cycle detection can never catch. Whenever the head breaks its
// outward record on one side, a snapshot of the tape from the record cell
// inward is taken. Records only qualify strictly outside the initial input
// span, so every cell beyond a record is untouched blank. If at the next
// record (one cell further out) the tape window covering the head's interior
// excursion since the previous record matches the previous snapshot, the
// whole inter-record segment depended only on that window and therefore
// repeats, shifted one cell per period, forever.
class TranslatedCycleDetector {
 public:
  explicit TranslatedCycleDetector(std::size_t input_length)
      : input_last_(static_cast<std::int64_t>(input_length) - 1) {}

  std::optional<DivergenceReason> operator()(const OneStateMachine&,
                                             const Configuration& c) {
    std::optional<DivergenceReason> fired;
    if (c.head < left_.extreme) {
      left_.extreme = c.head;
      if (c.head < 0) fired = on_record(left_, c, /*leftward=*/true);
    } else if (left_.has_record) {
      left_.interior = std::max(left_.interior, c.head);
    }
    if (fired) return fired;
    if (c.head > right_.extreme) {
      right_.extreme = c.head;
      if (c.head > input_last_)
        fired = on_record(right_, c, /*leftward=*/false);
    } else if (right_.has_record) {
      right_.interior = std::min(right_.interior, c.head);
    }
    return fired;
  }

 private:
  struct Side {
    std::int64_t extreme = 0;
    bool has_record = false;
    std::uint64_t record_step = 0;
    std::int64_t record_pos = 0;
    std::int64_t interior = 0;  // farthest inward head since the record
    std::vector<Symbol> snapshot;  // tape from record_pos inward, at record time
  };

  std::optional<DivergenceReason> on_record(Side& side, const Configuration& c,
                                            bool leftward) {
    std::optional<DivergenceReason> fired;
    std::int64_t outward = leftward ? -1 : 1;
    std::int64_t inward = -outward;
    if (side.has_record && side.record_pos == c.head - outward) {
      std::int64_t w =
          std::max<std::int64_t>(0, (side.interior - side.record_pos) * inward);
      bool equal = true;
      for (std::int64_t i = 0; i <= w && equal; ++i) {
        Symbol now = c.tape.at(c.head + i * inward);
        Symbol then = i < static_cast<std::int64_t>(side.snapshot.size())
                          ? side.snapshot[static_cast<std::size_t>(i)]
                          : c.tape.blank();
        equal = now == then;
      }
      if (equal) {
        fired = DivergenceReason{DivergenceReason::Kind::kTranslatedCycle,
                                 side.record_step, c.steps, outward};
      }
    }
    side.has_record = true;
    side.record_step = c.steps;
    side.record_pos = c.head;
    side.interior = c.head;
    side.snapshot.clear();
    if (c.tape.empty()) {
      side.snapshot.push_back(c.tape.blank());
    } else {
      std::int64_t far = leftward ? c.tape.hi() : c.tape.lo();
      for (std::int64_t i = c.head; (far - i) * inward >= 0; i += inward)
        side.snapshot.push_back(c.tape.at(i));
    }
    return fired;
  }

  std::int64_t input_last_;  // -1 for the empty input
  Side left_;
  Side right_;
};

struct HaltingVerdict {
  enum class Kind { kHalts, kDiverges, kUnknown };

  Kind kind{};
  std::uint64_t steps = 0;        // kHalts: halting step; kUnknown: fuel spent
  std::uint64_t detected_at = 0;  // kDiverges only
  std::optional<DivergenceReason> reason;

  bool halts() const { return kind == Kind::kHalts; }
  bool diverges() const { return kind == Kind::kDiverges; }
  bool unknown() const { return kind == Kind::kUnknown; }
};

// Fuel-bounded run with all three detectors enabled, cheapest first. The
// detectors are sound, so their order can only affect the reported reason,
// never the verdict.
inline RunOutcome run_all_detectors(const OneStateMachine& m,
                                    std::string_view input,
                                    std::uint64_t fuel) {
  return run(m, input, fuel, BlankEscapeDetector{},
             ExactCycleDetector(m, input),
             TranslatedCycleDetector(input.size()));
}

// Trace variant of run_all_detectors, used by the command line tracer.
inline TraceResult trace_all_detectors(const OneStateMachine& m,
                                       std::string_view input,
                                       std::uint64_t fuel) {
  return trace(m, input, fuel, BlankEscapeDetector{},
               ExactCycleDetector(m, input),
               TranslatedCycleDetector(input.size()));
}

// Three-valued halting decision. Never wrong when definitive; Unknown when
// the fuel runs out with no detector having fired.
inline HaltingVerdict decide_halting(const OneStateMachine& m,
                                     std::string_view input,
                                     std::uint64_t fuel) {
  RunOutcome out = run_all_detectors(m, input, fuel);
  switch (out.kind) {
    case RunOutcome::Kind::kHalted:
      return {HaltingVerdict::Kind::kHalts, out.steps, 0, std::nullopt};
    case RunOutcome::Kind::kDiverged:
      return {HaltingVerdict::Kind::kDiverges, 0, out.steps, out.reason};
    case RunOutcome::Kind::kFuelExhausted:
      break;
  }
  return {HaltingVerdict::Kind::kUnknown, out.steps, 0, std::nullopt};
}

}  // namespace onestm
