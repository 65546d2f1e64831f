#include "trustnet/harness.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

constexpr const char* kAdministratorId = "ADMIN";

json controllerSet(const std::set<ControllerId>& ids) {
  json out = json::array();
  for (auto c : ids) out.push_back(c);
  return out;
}

std::set<ControllerId> controllerSetFromJson(const json& j) {
  std::set<ControllerId> out;
  for (const auto& c : j) out.insert(c.get<ControllerId>());
  return out;
}

}  // namespace

Detection scoreDetection(const std::map<ControllerId, Verdict>& verdicts,
                         const std::set<ControllerId>& expectedMalicious) {
  Detection d;
  d.expectedMalicious = expectedMalicious;
  for (const auto& [c, v] : verdicts) {
    if (v == Verdict::Untrusted) d.flaggedUntrusted.insert(c);
  }
  for (auto c : d.flaggedUntrusted) {
    if (!expectedMalicious.contains(c)) ++d.falsePositives;
  }
  for (auto c : expectedMalicious) {
    if (!d.flaggedUntrusted.contains(c)) ++d.falseNegatives;
  }
  return d;
}

RunReport runScenario(const Scenario& input, const RunOptions& options) {
  Scenario scenario = input;
  scenario.normalize();

  Noticeboard board;
  board.setAuditSink(options.auditLog);
  board.registerReader(kAdministratorId);

  SwitchFabric fabric(board);
  for (const auto& [sw, owner] : scenario.switchLayout()) fabric.addSwitch(sw, owner);

  const auto ids = scenario.controllerIds();
  PolicyDistributor distributor(ids, board);
  for (const auto& [controller, policies] : scenario.assignments) {
    for (const auto& p : policies) distributor.definePolicy(controller, p);
  }

  std::vector<std::unique_ptr<ControllerAgent>> agents;
  for (auto c : ids) {
    agents.push_back(std::make_unique<ControllerAgent>(c, scenario.faultsFor(c), scenario.trustParams,
                                                       fabric, board, scenario.seed));
  }
  TrustCollector collector(ids, scenario.trustParams, board);

  RunReport report;
  std::uint64_t adminCursor = 0;
  for (int r = 1; r <= scenario.rounds; ++r) {
    const auto round = static_cast<std::uint64_t>(r);
    const auto started = std::chrono::steady_clock::now();

    board.beginRound(round);
    distributor.pushAssignments(round);
    for (auto& agent : agents) agent->syncAssignments();

    collector.startRound(round);
    for (auto& agent : agents) {
      if (!agent->awaitStart(round)) {
        throw Error(ErrorCode::RoundNotOpen, agent->readerId() + " missed the start command");
      }
      agent->submitRatings(agent->runPolicyChecker(round));
    }

    collector.collectAndRedistribute(round);
    for (auto& agent : agents) {
      const auto aggregated = agent->fetchAggregates(round);
      agent->submitTrustReport(agent->computeTrustReport(aggregated, round), round);
    }

    auto roundReport = collector.aggregateVerdicts(round);
    for (const auto& msg : board.poll(Topic::Verdicts, kAdministratorId, adminCursor)) adminCursor = msg.seq;
    board.endRound(round);
    roundReport.metrics = board.snapshotMetrics(round);

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    report.wallSeconds.push_back(elapsed.count());
    report.perRound.push_back(std::move(roundReport));
  }

  report.scenario = scenario;
  report.detection = scoreDetection(report.perRound.back().verdicts, scenario.tamperers());
  for (auto sw : fabric.allSwitches()) {
    const auto& s = fabric.at(sw);
    report.flowTables.push_back(SwitchSnapshot{sw, s.owner(), s.entries()});
  }
  return report;
}

ReportFormat parseReportFormat(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::ValidationError, "format: expected json or csv, got '" + std::string(text) + "'");
}

json reportToJson(const RunReport& report, bool includeTiming) {
  json rounds = json::array();
  for (const auto& r : report.perRound) rounds.push_back(r);
  json tables = json::array();
  for (const auto& s : report.flowTables) {
    tables.push_back(json{{"switch", s.id}, {"owner", s.owner}, {"entries", s.entries}});
  }
  json j{{"scenario", scenarioToJson(report.scenario)},
         {"rounds", std::move(rounds)},
         {"detection",
          {{"flagged_untrusted", controllerSet(report.detection.flaggedUntrusted)},
           {"expected_malicious", controllerSet(report.detection.expectedMalicious)},
           {"false_positives", report.detection.falsePositives},
           {"false_negatives", report.detection.falseNegatives}}},
         {"flow_tables", std::move(tables)}};
  if (includeTiming) j["timing"] = json{{"wall_seconds", report.wallSeconds}};
  return j;
}

RunReport reportFromJson(const json& j) {
  RunReport report;
  try {
    report.scenario = scenarioFromJson(j.at("scenario"));
    for (const auto& r : j.at("rounds")) report.perRound.push_back(r.get<RoundReport>());
    const auto& d = j.at("detection");
    report.detection.flaggedUntrusted = controllerSetFromJson(d.at("flagged_untrusted"));
    report.detection.expectedMalicious = controllerSetFromJson(d.at("expected_malicious"));
    report.detection.falsePositives = d.at("false_positives").get<int>();
    report.detection.falseNegatives = d.at("false_negatives").get<int>();
    for (const auto& t : j.at("flow_tables")) {
      report.flowTables.push_back(SwitchSnapshot{t.at("switch").get<SwitchId>(), t.at("owner").get<ControllerId>(),
                                                 t.at("entries").get<std::vector<FlowEntry>>()});
    }
    if (j.contains("timing")) {
      report.wallSeconds = j.at("timing").at("wall_seconds").get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("run report: ") + e.what());
  }
  return report;
}

std::string renderCsv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "scenario,round,controllers,switches,publishes,paired_reads,probe_exchanges,"
         "total_messages,wall_seconds,trusted,untrusted,tied\n";
  for (const auto& report : reports) {
    for (std::size_t i = 0; i < report.perRound.size(); ++i) {
      const auto& r = report.perRound[i];
      int trusted = 0, untrusted = 0, tied = 0;
      for (const auto& [_, v] : r.verdicts) {
        if (v == Verdict::Trusted) ++trusted;
        else if (v == Verdict::Untrusted) ++untrusted;
        else ++tied;
      }
      const double wall = i < report.wallSeconds.size() ? report.wallSeconds[i] : 0.0;
      out << report.scenario.name << ',' << r.roundId << ',' << report.scenario.controllers << ','
          << report.scenario.switchCount() << ',' << r.metrics.publishes << ',' << r.metrics.pairedReads
          << ',' << r.metrics.probeExchanges << ',' << r.metrics.totalMessages() << ',' << wall << ','
          << trusted << ',' << untrusted << ',' << tied << '\n';
    }
  }
  return out.str();
}

std::string renderReport(const RunReport& report, ReportFormat format, bool includeTiming) {
  if (format == ReportFormat::Csv) return renderCsv(std::span(&report, 1));
  return reportToJson(report, includeTiming).dump(2) + "\n";
}

void emitReport(const RunReport& report, ReportFormat format, const std::filesystem::path& path,
                bool includeTiming) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << renderReport(report, format, includeTiming);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace trustnet
