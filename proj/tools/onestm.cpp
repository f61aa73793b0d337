// Command line front end: run a machine on an input, trace the computation,
// generate comparator machines, and run the verification suites.
//
// Exit codes: 0 halted / verification holds, 1 definitive divergence,
// 2 unknown (fuel exhausted or unknowns violating a suite policy),
// 3 usage or input error, 4 verification counterexample.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "onestm/builders.hpp"
#include "onestm/core.hpp"
#include "onestm/halting.hpp"
#include "onestm/simulator.hpp"
#include "onestm/verify.hpp"

namespace {

enum ExitCode : int {
  kExitHalted = 0,
  kExitDiverges = 1,
  kExitUnknown = 2,
  kExitUsage = 3,
  kExitVerificationFailed = 4,
};

constexpr std::uint64_t kDefaultFuel = 10'000'000;

struct MachineChoice {
  std::string builtin;
  std::string file;
};

// Resolves --builtin mcc | unary-vs-base:<k> or --file <path>.
std::optional<onestm::OneStateMachine> resolve_machine(const MachineChoice& choice) {
  using namespace onestm;
  if (!choice.builtin.empty()) {
    if (choice.builtin == "mcc") return build_mcc();
    constexpr std::string_view prefix = "unary-vs-base:";
    if (choice.builtin.rfind(prefix, 0) == 0) {
      try {
        int base = std::stoi(choice.builtin.substr(prefix.size()));
        return build_unary_vs_base(base);
      } catch (const std::exception& e) {
        std::cerr << "error: bad builtin base: " << e.what() << "\n";
        return std::nullopt;
      }
    }
    std::cerr << "error: unknown builtin '" << choice.builtin
              << "' (expected mcc or unary-vs-base:<k>)\n";
    return std::nullopt;
  }
  std::ifstream in(choice.file);
  if (!in) {
    std::cerr << "error: cannot open machine file '" << choice.file << "'\n";
    return std::nullopt;
  }
  std::ostringstream text;
  text << in.rdbuf();
  ValidationResult result = parse_machine(text.str());
  if (!result.ok()) {
    for (const auto& e : result.errors) {
      std::cerr << "error: " << choice.file << ":";
      if (e.line > 0) std::cerr << e.line << ":";
      std::cerr << " " << to_string(e.kind) << ": " << e.detail << "\n";
    }
    return std::nullopt;
  }
  return *result.machine;
}

int print_outcome(const onestm::RunOutcome& out) {
  using onestm::RunOutcome;
  switch (out.kind) {
    case RunOutcome::Kind::kHalted:
      std::cout << "HALTS steps=" << out.steps << "\n";
      return kExitHalted;
    case RunOutcome::Kind::kDiverged:
      std::cout << "DIVERGES reason=" << to_string(out.reason->kind)
                << " at=" << out.steps << "\n";
      return kExitDiverges;
    case RunOutcome::Kind::kFuelExhausted:
      std::cout << "UNKNOWN fuel=" << out.steps << "\n";
      return kExitUnknown;
  }
  return kExitUsage;
}

int report_exit_code(const onestm::VerificationReport& report) {
  std::cout << report.summary();
  if (report.failures > 0) return kExitVerificationFailed;
  if (!report.holds()) return kExitUnknown;
  return kExitHalted;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace onestm;

  CLI::App app{"one-state Turing machine toolkit"};
  app.require_subcommand(1);

  MachineChoice choice;
  std::string input;
  std::uint64_t fuel = kDefaultFuel;

  auto add_machine_options = [&](CLI::App* cmd) {
    auto* builtin = cmd->add_option("--builtin", choice.builtin,
                                    "builtin machine: mcc or unary-vs-base:<k>");
    auto* file = cmd->add_option("--file", choice.file,
                                 "machine definition file");
    builtin->excludes(file);
    file->excludes(builtin);
    cmd->add_option("--input", input, "input string (default: empty)");
    cmd->add_option("--fuel", fuel, "step budget (default 10^7)");
    cmd->callback([builtin, file]() {
      if (builtin->count() == 0 && file->count() == 0)
        throw CLI::ValidationError("machine", "one of --builtin or --file is required");
    });
  };

  auto* run_cmd = app.add_subcommand("run", "run a machine and print the outcome");
  add_machine_options(run_cmd);
  auto* trace_cmd =
      app.add_subcommand("trace", "print every configuration, then the outcome");
  add_machine_options(trace_cmd);

  int base = 2;
  auto* generate_cmd = app.add_subcommand(
      "generate", "emit the unary-versus-base-k comparator as a machine file");
  generate_cmd->add_option("--base", base, "counter base, 2..10")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->require_subcommand(1);

  std::uint64_t nmax = 40, mmax = 5;
  std::uint64_t thm2_fuel = kDefaultFuel;
  auto* thm2_cmd = verify_cmd->add_subcommand(
      "thm2", "comparator halting versus the n >= 2^m - 1 predicate");
  thm2_cmd->add_option("--nmax", nmax, "largest unary count (default 40)");
  thm2_cmd->add_option("--mmax", mmax, "largest digit count (default 5)");
  thm2_cmd->add_option("--fuel", thm2_fuel, "step budget per case (default 10^7)");

  std::uint64_t pump_p = 3, witness_max = 8;
  auto* pump_cmd = verify_cmd->add_subcommand(
      "pump", "pumping certificate for u^(2^p-1) 0^p h");
  pump_cmd->add_option("--p", pump_p, "pumping length (default 3)")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{16}));
  pump_cmd->add_option("--witness-max", witness_max,
                       "largest pump exponent tried (default 8)");

  std::uint64_t gamma = 2, kmax = 3;
  std::uint64_t thm1_fuel = 100'000;
  auto* thm1_cmd = verify_cmd->add_subcommand(
      "thm1", "exhaustive enumeration: halting on 1 forces halting on 1^k");
  thm1_cmd->add_option("--gamma", gamma, "tape alphabet size, 2..3 (default 2)")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{3}));
  thm1_cmd->add_option("--kmax", kmax, "longest 1^k checked (default 3)")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{12}));
  thm1_cmd->add_option("--fuel", thm1_fuel, "step budget per run (default 10^5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed() || trace_cmd->parsed()) {
      auto machine = resolve_machine(choice);
      if (!machine) return kExitUsage;
      try {
        if (trace_cmd->parsed()) {
          TraceResult t = trace_all_detectors(*machine, input, fuel);
          for (const auto& line : t.lines) std::cout << line << "\n";
          return print_outcome(t.outcome);
        }
        return print_outcome(run_all_detectors(*machine, input, fuel));
      } catch (const InputSymbolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    }
    if (generate_cmd->parsed()) {
      try {
        std::cout << serialize_machine(build_unary_vs_base(base));
      } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      return kExitHalted;
    }
    if (thm2_cmd->parsed())
      return report_exit_code(crosscheck_theorem2(nmax, mmax, thm2_fuel));
    if (pump_cmd->parsed())
      return report_exit_code(verify_lemma_notcf(pump_p, witness_max));
    if (thm1_cmd->parsed())
      return report_exit_code(verify_theorem1(gamma, thm1_fuel, kmax));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
