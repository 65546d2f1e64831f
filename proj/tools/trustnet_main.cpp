// trustnet: run trust rounds over a simulated multi-controller SDN.
//
//   trustnet run --config scenario.json [--seed N] [--rounds K] [--format json|csv]
//                [--out PATH] [--audit-log PATH] [--timing]
//   trustnet builtin t3c1 [same flags]
//   trustnet list
//
// Exit codes: 0 clean run, 2 invalid input, 3 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trustnet/error.hpp"
#include "trustnet/harness.hpp"
#include "trustnet/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> rounds;
  std::string format = "json";
  std::string out;
  std::string auditLog;
  bool timing = false;
};

void addRunFlags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--seed", flags.seed, "RNG seed (overrides the scenario)");
  cmd->add_option("--rounds", flags.rounds, "number of trust rounds (overrides the scenario)");
  cmd->add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", flags.out, "write the report here instead of stdout");
  cmd->add_option("--audit-log", flags.auditLog, "write the noticeboard log as JSON lines");
  cmd->add_flag("--timing", flags.timing, "include wall-clock seconds in JSON output");
}

int execute(trustnet::Scenario scenario, const RunFlags& flags) {
  if (flags.seed) scenario.seed = *flags.seed;
  if (flags.rounds) scenario.rounds = *flags.rounds;
  scenario.normalize();
  const auto format = trustnet::parseReportFormat(flags.format);

  std::ofstream audit;
  trustnet::RunOptions options;
  if (!flags.auditLog.empty()) {
    audit.open(flags.auditLog, std::ios::trunc);
    if (!audit) throw trustnet::Error(trustnet::ErrorCode::IoError, "cannot write " + flags.auditLog);
    options.auditLog = &audit;
  }

  const auto report = trustnet::runScenario(scenario, options);
  if (flags.out.empty()) {
    std::cout << trustnet::renderReport(report, format, flags.timing);
  } else {
    trustnet::emitReport(report, format, flags.out, flags.timing);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust and reputation rounds for distributed SDN controllers", "trustnet"};
  app.require_subcommand(1);

  RunFlags runFlags;
  std::string configPath;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("--config", configPath, "scenario JSON file")->required();
  addRunFlags(run, runFlags);

  RunFlags builtinFlags;
  std::string builtinName;
  auto* builtin = app.add_subcommand("builtin", "run a built-in configuration");
  builtin->add_option("name", builtinName, "configuration name (see `trustnet list`)")->required();
  addRunFlags(builtin, builtinFlags);

  auto* list = app.add_subcommand("list", "list built-in configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*list) {
      for (const auto& name : trustnet::builtinNames()) std::cout << name << '\n';
      return 0;
    }
    if (*run) return execute(trustnet::loadScenario(configPath), runFlags);
    const auto seed = builtinFlags.seed.value_or(1);
    return execute(trustnet::builtinScenario(builtinName, seed), builtinFlags);
  } catch (const trustnet::Error& e) {
    std::cerr << "trustnet: " << e.what() << '\n';
    return e.isValidation() ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "trustnet: " << e.what() << '\n';
    return kExitRuntime;
  }
}
