#include <catch2/catch.hpp>

#include <random>

#include "onestm/builders.hpp"
#include "onestm/halting.hpp"
#include "test_support.hpp"

using namespace onestm;

namespace {

OneStateMachine machine_from(const char* text) {
  ValidationResult result = parse_machine(text);
  REQUIRE(result.ok());
  return *result.machine;
}

}  // namespace

TEST_CASE("blank escape fires left of the region when the blank rule moves left") {
  OneStateMachine m = build_mcc();
  Configuration c = init(m, "uuuu00h");
  c.head = -1;
  CHECK(detect_blank_escape(m, c));

  c.head = 2;  // inside the written region
  CHECK_FALSE(detect_blank_escape(m, c));
}

TEST_CASE("blank escape stays quiet when the blank rule points back inward") {
  OneStateMachine m = machine_from(
      "blank _\n"
      "input 1\n"
      "rule 1 1 L\n"
      "rule _ x R\n"
      "rule x x L\n");
  Configuration c = init(m, "1");
  c.head = -1;  // left of the region, but the blank rule re-enters it
  CHECK_FALSE(detect_blank_escape(m, c));
  c.head = 1;  // right of the region and moving away
  CHECK(detect_blank_escape(m, c));
}

TEST_CASE("blank escape covers the all-blank tape") {
  OneStateMachine m = machine_from(
      "blank _\n"
      "rule _ _ R\n");
  Configuration c;
  CHECK(detect_blank_escape(m, c));

  OneStateMachine halting_blank = machine_from(
      "blank _\n"
      "halt _\n");
  CHECK_FALSE(detect_blank_escape(halting_blank, c));
}

TEST_CASE("blank escape sustains itself once it fires") {
  std::mt19937 rng(4242);
  int fired = 0;
  for (int i = 0; i < 400; ++i) {
    OneStateMachine m = onestm::testing::random_machine(rng);
    std::string input = onestm::testing::random_input(rng, m);
    Configuration c = init(m, input);
    for (int s = 0; s < 200; ++s) {
      if (detect_blank_escape(m, c)) {
        ++fired;
        Configuration next = c;
        REQUIRE(step(m, next) == StepStatus::kContinue);
        CHECK(detect_blank_escape(m, next));
        break;
      }
      if (step(m, c) == StepStatus::kHalted) break;
    }
  }
  CHECK(fired > 20);
}

TEST_CASE("exact cycle detection catches a head oscillator") {
  // Head bounces between cell 0 and cell -1 with an unchanged tape.
  OneStateMachine m = machine_from(
      "blank _\n"
      "input 1\n"
      "rule 1 1 L\n"
      "rule _ _ R\n");
  RunOutcome out = run(m, "1", 1000, ExactCycleDetector(m, "1"));
  REQUIRE(out.diverged());
  CHECK(out.reason->kind == DivergenceReason::Kind::kExactCycle);
  CHECK(out.steps <= 4);
  CHECK(out.reason->second_step - out.reason->first_step == 2);
}

TEST_CASE("exact cycle detection never preempts a halting run") {
  RunOutcome out = run_all_detectors(build_mcc(), "uuuu00h", 1000000);
  CHECK(out.halted());
  CHECK(out.steps == 20);
}

TEST_CASE("a fresh run has no history to fire on") {
  OneStateMachine m = build_mcc();
  ExactCycleDetector detector(m, "u0h");
  Configuration c = init(m, "u0h");
  CHECK_FALSE(detector(m, c).has_value());
}

TEST_CASE("translated cycle detection catches a leftward grower") {
  // Writes a growing block of 1s, shifting one cell left per bounce; the
  // tape never repeats exactly.
  OneStateMachine m = machine_from(
      "blank _\n"
      "input 1\n"
      "rule _ 1 R\n"
      "rule 1 1 L\n");
  RunOutcome out =
      run(m, "1", 100000, TranslatedCycleDetector(std::string("1").size()));
  REQUIRE(out.diverged());
  CHECK(out.reason->kind == DivergenceReason::Kind::kTranslatedCycle);
  CHECK(out.reason->shift == -1);
  CHECK(out.steps <= 10);  // second or third left record

  // The verdict is honest: a plain run ten times longer never halts.
  CHECK(run(m, "1", 1000000).fuel_exhausted());
}

TEST_CASE("translated cycle detection leaves halting comparator runs alone") {
  OneStateMachine m = build_mcc();
  for (std::size_t n : {7u, 8u, 12u}) {  // n >= 2^3 - 1 halts
    std::string input = well_formed_input(n, 3);
    RunOutcome out =
        run(m, input, 1000000, TranslatedCycleDetector(input.size()));
    CHECK(out.halted());
  }
}

TEST_CASE("decide_halting matches the comparator's documented behaviour") {
  OneStateMachine m = build_mcc();
  HaltingVerdict documented = decide_halting(m, "uuuu00h", 1000000);
  REQUIRE(documented.halts());
  CHECK(documented.steps == 20);

  HaltingVerdict boundary = decide_halting(m, "uuu00h", 1000000);
  CHECK(boundary.halts());  // n = 3 meets 2^2 - 1 exactly

  HaltingVerdict starved = decide_halting(m, "uu00h", 1000000);
  REQUIRE(starved.diverges());
  CHECK(starved.reason->kind == DivergenceReason::Kind::kBlankEscape);
}

TEST_CASE("decide_halting returns unknown when fuel runs out") {
  HaltingVerdict v = decide_halting(build_mcc(), "uuuu00h", 5);
  REQUIRE(v.unknown());
  CHECK(v.steps == 5);
}

TEST_CASE("diverges verdicts are sound and halts verdicts agree with plain runs") {
  std::mt19937 rng(20240818);
  int diverged = 0, halted = 0;
  for (int i = 0; i < 1500; ++i) {
    OneStateMachine m = onestm::testing::random_machine(rng);
    std::string input = onestm::testing::random_input(rng, m);
    const std::uint64_t fuel = 2000;
    HaltingVerdict verdict = decide_halting(m, input, fuel);
    RunOutcome plain = run(m, input, 10 * fuel);
    if (verdict.diverges()) {
      ++diverged;
      CHECK(plain.fuel_exhausted());
    }
    if (plain.halted() && plain.steps <= fuel) {
      ++halted;
      REQUIRE(verdict.halts());
      CHECK(verdict.steps == plain.steps);
    }
  }
  // The sample exercises both sides of the property.
  CHECK(diverged > 100);
  CHECK(halted > 100);
}

TEST_CASE("definitive verdicts are unchanged by extra fuel") {
  std::mt19937 rng(5150);
  int definitive = 0;
  for (int i = 0; i < 300; ++i) {
    OneStateMachine m = onestm::testing::random_machine(rng);
    std::string input = onestm::testing::random_input(rng, m);
    HaltingVerdict small = decide_halting(m, input, 1000);
    if (small.unknown()) continue;
    ++definitive;
    HaltingVerdict big = decide_halting(m, input, 50000);
    CHECK(big.kind == small.kind);
    if (small.halts()) CHECK(big.steps == small.steps);
    if (small.diverges()) {
      CHECK(big.detected_at == small.detected_at);
      CHECK(big.reason->kind == small.reason->kind);
    }
  }
  CHECK(definitive > 100);
}
