#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "trustnet/scenario.hpp"
#include "trustnet/switch_sim.hpp"
#include "trustnet/trust_collector.hpp"

namespace trustnet {

struct Detection {
  std::set<ControllerId> flaggedUntrusted;
  std::set<ControllerId> expectedMalicious;
  int falsePositives = 0;
  int falseNegatives = 0;

  bool operator==(const Detection&) const = default;
};

struct SwitchSnapshot {
  SwitchId id;
  ControllerId owner;
  std::vector<FlowEntry> entries;

  bool operator==(const SwitchSnapshot&) const = default;
};

struct RunReport {
  Scenario scenario;
  std::vector<RoundReport> perRound;
  /// Scored against the final round's verdicts.
  Detection detection;
  std::vector<SwitchSnapshot> flowTables;
  /// Wall-clock seconds per round. Excluded from JSON unless requested so
  /// reports stay byte-identical across runs.
  std::vector<double> wallSeconds;

  bool operator==(const RunReport&) const = default;
};

struct RunOptions {
  /// Receives the noticeboard audit log as JSON lines when set.
  std::ostream* auditLog = nullptr;
};

/// Runs every round of the scenario: push, install, start, sweep, submit,
/// redistribute, report, verdict.
RunReport runScenario(const Scenario& scenario, const RunOptions& options = {});

Detection scoreDetection(const std::map<ControllerId, Verdict>& verdicts,
                         const std::set<ControllerId>& expectedMalicious);

enum class ReportFormat { Json, Csv };
ReportFormat parseReportFormat(std::string_view text);

json reportToJson(const RunReport& report, bool includeTiming = false);
RunReport reportFromJson(const json& j);

/// Header plus one row per round of each report.
std::string renderCsv(std::span<const RunReport> reports);
std::string renderReport(const RunReport& report, ReportFormat format, bool includeTiming = false);

/// Writes the rendered report to `path`. Throws IoError.
void emitReport(const RunReport& report, ReportFormat format, const std::filesystem::path& path,
                bool includeTiming = false);

}  // namespace trustnet
