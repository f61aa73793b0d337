#pragma once

// Mechanical, desk-scale verification of the toolkit's central claims:
//  - the comparator's halting behaviour on u^n 0^m h agrees with the
//    syntactic predicate n >= k^m - 1 over an exhaustive grid;
//  - the pump string u^{2^p-1} 0^p h cannot be pumped: every decomposition
//    satisfying the context-free pumping side conditions has a witness
//    exponent ejecting the pumped string from the language;
//  - exhaustive enumeration of small machines over {_, 1, ...} confirms that
//    halting on "1" forces halting on every longer 1^k.

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "onestm/builders.hpp"
#include "onestm/core.hpp"
#include "onestm/halting.hpp"

namespace onestm {

struct U0hShape {
  std::size_t n;  // leading u count
  std::size_t m;  // following '0' count

  friend bool operator==(const U0hShape&, const U0hShape&) = default;
};

// Membership test for the regular language { u^n 0^m h | n, m >= 0 }.
inline std::optional<U0hShape> parse_u0h(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == 'u') ++i;
  std::size_t n = i;
  while (i < s.size() && s[i] == '0') ++i;
  std::size_t m = i - n;
  if (i + 1 != s.size() || s[i] != 'h') return std::nullopt;
  return U0hShape{n, m};
}

// n >= base^m - 1, computed exactly; thresholds beyond the representable
// range make the comparison false since n is a string length.
inline bool counter_threshold_met(std::size_t n, int base, std::size_t m) {
  std::uint64_t threshold = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (threshold > UINT64_MAX / static_cast<std::uint64_t>(base))
      return false;
    threshold *= static_cast<std::uint64_t>(base);
  }
  return n >= threshold - 1;
}

// Membership in { u^n 0^m h | n >= 2^m - 1 }.
inline bool in_lcc_prime(std::string_view s) {
  auto shape = parse_u0h(s);
  return shape && counter_threshold_met(shape->n, 2, shape->m);
}

// One decomposition s = r v w x y subject to |vwx| <= p and |vx| >= 1.
struct Decomposition {
  std::string r, v, w, x, y;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// Every decomposition satisfying both side conditions, exactly once, in
// lexicographic order of (|r|, |v|, |w|, |x|).
inline std::vector<Decomposition> enumerate_decompositions(std::string_view s,
                                                           std::size_t p) {
  std::vector<Decomposition> out;
  std::size_t len = s.size();
  for (std::size_t r = 0; r <= len; ++r) {
    std::size_t window = std::min(p, len - r);
    for (std::size_t v = 0; v <= window; ++v) {
      for (std::size_t w = 0; v + w <= window; ++w) {
        for (std::size_t x = 0; v + w + x <= window; ++x) {
          if (v + x == 0) continue;
          out.push_back(Decomposition{
              std::string(s.substr(0, r)), std::string(s.substr(r, v)),
              std::string(s.substr(r + v, w)), std::string(s.substr(r + v + w, x)),
              std::string(s.substr(r + v + w + x))});
        }
      }
    }
  }
  return out;
}

// r v^n w x^n y.
inline std::string pump(const Decomposition& d, std::size_t n) {
  std::string out = d.r;
  for (std::size_t i = 0; i < n; ++i) out += d.v;
  out += d.w;
  for (std::size_t i = 0; i < n; ++i) out += d.x;
  out += d.y;
  return out;
}

// Smallest exponent in 0..n_max whose pumped string leaves the language;
// membership is decided by the syntactic predicate, never by simulation,
// since pumped strings may leave the u^* 0^* h shape entirely.
inline std::optional<std::size_t> find_pump_witness(std::string_view,
                                                    const Decomposition& d,
                                                    std::size_t n_max) {
  for (std::size_t n = 0; n <= n_max; ++n)
    if (!in_lcc_prime(pump(d, n))) return n;
  return std::nullopt;
}

// Structured pass/fail evidence for one checker run.
struct VerificationReport {
  std::string checker;
  std::string params;
  std::uint64_t total = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  std::uint64_t unknowns = 0;
  bool unknowns_violate_policy = true;
  std::vector<std::string> failure_witnesses;
  double elapsed_seconds = 0.0;

  bool holds() const {
    return failures == 0 && (!unknowns_violate_policy || unknowns == 0);
  }

  // Golden-file text: summary lines, failure witnesses, verdict. Elapsed
  // time is deliberately excluded to keep the output byte-stable.
  std::string summary() const {
    std::string out;
    out += "checker: " + checker + "\n";
    out += "params: " + params + "\n";
    out += "total: " + std::to_string(total) + "\n";
    out += "passes: " + std::to_string(passes) + "\n";
    out += "failures: " + std::to_string(failures) + "\n";
    out += "unknowns: " + std::to_string(unknowns) + "\n";
    for (const auto& witness : failure_witnesses)
      out += "failure: " + witness + "\n";
    out += std::string("result: ") + (holds() ? "HOLDS" : "FAILS") + "\n";
    return out;
  }
};

namespace detail {

class StopWatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace detail

// Exhaustive agreement check between the base-k comparator's decided halting
// behaviour and the predicate n >= k^m - 1, over the full (n, m) grid.
// Every verdict must be definitive.
inline VerificationReport crosscheck_counter_machine(int base,
                                                     std::size_t n_max,
                                                     std::size_t m_max,
                                                     std::uint64_t fuel) {
  detail::StopWatch watch;
  VerificationReport report;
  report.checker = "counter-crosscheck";
  report.params = "base=" + std::to_string(base) +
                  " nmax=" + std::to_string(n_max) +
                  " mmax=" + std::to_string(m_max) +
                  " fuel=" + std::to_string(fuel);
  OneStateMachine machine = build_unary_vs_base(base);
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t m = 0; m <= m_max; ++m) {
      ++report.total;
      std::string input = well_formed_input(n, m);
      HaltingVerdict verdict = decide_halting(machine, input, fuel);
      bool expected_halts = counter_threshold_met(n, base, m);
      if (verdict.unknown()) {
        ++report.unknowns;
        report.failure_witnesses.push_back(
            "n=" + std::to_string(n) + " m=" + std::to_string(m) +
            " verdict=unknown");
      } else if (verdict.halts() == expected_halts) {
        ++report.passes;
      } else {
        ++report.failures;
        report.failure_witnesses.push_back(
            "n=" + std::to_string(n) + " m=" + std::to_string(m) +
            " expected=" + (expected_halts ? "halts" : "diverges") +
            " got=" + (verdict.halts() ? "halts" : "diverges"));
      }
    }
  }
  report.elapsed_seconds = watch.seconds();
  return report;
}

// The binary instance: halting on u^n 0^m h iff n >= 2^m - 1.
inline VerificationReport crosscheck_theorem2(std::size_t n_max,
                                              std::size_t m_max,
                                              std::uint64_t fuel) {
  VerificationReport report = crosscheck_counter_machine(2, n_max, m_max, fuel);
  report.checker = "thm2-crosscheck";
  report.params = "nmax=" + std::to_string(n_max) +
                  " mmax=" + std::to_string(m_max) +
                  " fuel=" + std::to_string(fuel);
  return report;
}

// Desk-scale pumping certificate: s = u^{2^p-1} 0^p h cannot be pumped.
// Holds iff every decomposition has a witness exponent <= witness_max.
inline VerificationReport verify_lemma_notcf(std::size_t p,
                                             std::size_t witness_max) {
  detail::StopWatch watch;
  VerificationReport report;
  report.checker = "pump-lemma";
  report.params =
      "p=" + std::to_string(p) + " witness_max=" + std::to_string(witness_max);
  std::string s =
      well_formed_input((static_cast<std::size_t>(1) << p) - 1, p);
  for (const Decomposition& d : enumerate_decompositions(s, p)) {
    ++report.total;
    if (find_pump_witness(s, d, witness_max)) {
      ++report.passes;
    } else {
      ++report.failures;
      report.failure_witnesses.push_back(
          "r=" + d.r + " v=" + d.v + " w=" + d.w + " x=" + d.x + " y=" + d.y +
          " has no witness <= " + std::to_string(witness_max));
    }
  }
  report.elapsed_seconds = watch.seconds();
  return report;
}

// Every valid machine with Sigma = {1}, blank '_', Gamma of the given size
// (auxiliary symbols a, b, ... in fixed order), every halting subset and
// every total transition table: each symbol independently is either halting
// or mapped to one of |Gamma| * 2 rules, (2g+1)^g machines in all.
inline std::vector<OneStateMachine> enumerate_one_state_machines(
    std::size_t gamma_size) {
  if (gamma_size < 2)
    throw std::out_of_range("tape alphabet needs at least the blank and 1");
  std::vector<Symbol> gamma = {kBlank, '1'};
  for (std::size_t i = 2; i < gamma_size; ++i)
    gamma.push_back(static_cast<Symbol>('a' + (i - 2)));

  std::size_t choices = 2 * gamma_size + 1;  // halting, or (write, move)
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < gamma_size; ++i) count *= choices;

  std::vector<OneStateMachine> machines;
  machines.reserve(count);
  for (std::uint64_t index = 0; index < count; ++index) {
    MachineDescription desc;
    desc.blank = kBlank;
    desc.input = {'1'};
    std::uint64_t rest = index;
    for (std::size_t i = 0; i < gamma_size; ++i) {
      std::size_t choice = rest % choices;
      rest /= choices;
      if (choice == 0) {
        desc.halting.push_back(gamma[i]);
      } else {
        std::size_t rule_index = choice - 1;
        Symbol write = gamma[rule_index / 2];
        Move move = rule_index % 2 == 0 ? Move::kLeft : Move::kRight;
        desc.rules.emplace_back(gamma[i], Rule{write, move});
      }
    }
    ValidationResult result = validate(desc);
    if (!result.ok())
      throw std::logic_error("enumerated machine failed validation");
    machines.push_back(std::move(*result.machine));
  }
  return machines;
}

// For every enumerated machine that halts on "1", halting on 1^k must follow
// for every k up to k_max. A machine that halts on "1" yet diverges on some
// 1^k would contradict the enumeration claim and is recorded as a failure.
// Unknown verdicts are tallied; with gamma_size = 2 they violate policy
// (every verdict must be definitive), for larger alphabets they are
// informational.
inline VerificationReport verify_theorem1(std::size_t gamma_size,
                                          std::uint64_t fuel,
                                          std::size_t k_max) {
  detail::StopWatch watch;
  VerificationReport report;
  report.checker = "thm1-enumeration";
  report.params = "gamma=" + std::to_string(gamma_size) +
                  " kmax=" + std::to_string(k_max) +
                  " fuel=" + std::to_string(fuel);
  report.unknowns_violate_policy = gamma_size <= 2;
  std::uint64_t machine_index = 0;
  for (const OneStateMachine& m : enumerate_one_state_machines(gamma_size)) {
    ++report.total;
    HaltingVerdict on_one = decide_halting(m, "1", fuel);
    bool any_unknown = on_one.unknown();
    bool failed = false;
    if (on_one.halts()) {
      for (std::size_t k = 2; k <= k_max && !failed; ++k) {
        HaltingVerdict on_k = decide_halting(m, std::string(k, '1'), fuel);
        if (on_k.diverges()) {
          failed = true;
          report.failure_witnesses.push_back(
              "machine#" + std::to_string(machine_index) + " halts on 1 but " +
              "diverges on " + std::string(k, '1'));
        } else if (on_k.unknown()) {
          any_unknown = true;
        }
      }
    }
    if (failed)
      ++report.failures;
    else if (any_unknown)
      ++report.unknowns;
    else
      ++report.passes;
    ++machine_index;
  }
  report.elapsed_seconds = watch.seconds();
  return report;
}

}  // namespace onestm
