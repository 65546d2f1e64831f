#include "trustnet/harness.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "protocol_oracle.hpp"
#include "trustnet/error.hpp"

namespace trustnet {
namespace {

const std::string kData = TRUSTNET_TEST_DATA;

TEST(RunScenarioTest, DetectsSeededTamperers) {
  const auto s = builtinScenario("t1c2", 4);
  const auto report = runScenario(s);
  EXPECT_EQ(report.detection.flaggedUntrusted, s.tamperers());
  EXPECT_EQ(report.detection.falsePositives, 0);
  EXPECT_EQ(report.detection.falseNegatives, 0);
}

TEST(RunScenarioTest, ZeroFaultsAllTrusted) {
  Scenario s;
  s.controllers = 3;
  s.switchesPerController = 2;
  s.assignments = defaultAssignments(3);
  const auto report = runScenario(s);
  ASSERT_EQ(report.perRound.size(), 1u);
  for (const auto& [_, v] : report.perRound[0].verdicts) EXPECT_EQ(v, Verdict::Trusted);
  for (const auto& [_, t] : report.perRound[0].aggregateT) EXPECT_EQ(t, 1.0);
}

TEST(RunScenarioTest, RoundMessagesMatchOracle) {
  const auto report = runScenario(builtinScenario("t2c2"));
  const auto oracle = testing::enumerateRound(3, 6);
  const auto& m = report.perRound[0].metrics;
  EXPECT_EQ(m.totalMessages(), static_cast<std::uint64_t>(oracle.total()));
  EXPECT_EQ(m.totalMessages(), 28u);
  EXPECT_EQ(m.publishes, static_cast<std::uint64_t>(oracle.publishes()));
  EXPECT_EQ(m.probeExchanges, static_cast<std::uint64_t>(oracle.probes));
  EXPECT_GE(m.pairedReads, m.publishes);
}

TEST(RunScenarioTest, MessageStructureIndependentOfFaults) {
  auto s = builtinScenario("t3c2");
  const auto faulty = runScenario(s).perRound[0].metrics;
  s.faults.clear();
  const auto clean = runScenario(s).perRound[0].metrics;
  EXPECT_EQ(faulty.totalMessages(), clean.totalMessages());
  EXPECT_EQ(faulty.publishes, clean.publishes);
}

TEST(RunScenarioTest, EveryRoundHasSameMessageCount) {
  auto s = builtinScenario("t2c3");
  s.rounds = 4;
  const auto report = runScenario(s);
  ASSERT_EQ(report.perRound.size(), 4u);
  for (const auto& r : report.perRound) EXPECT_EQ(r.metrics.totalMessages(), 6u * 12u + 2u * 6u + 4u);
}

TEST(RunScenarioTest, FlowTablesInReport) {
  const auto s = builtinScenario("t2c2", 2);
  const auto report = runScenario(s);
  ASSERT_EQ(report.flowTables.size(), 6u);
  const auto tamperer = *s.tamperers().begin();
  for (const auto& sw : report.flowTables) {
    ASSERT_EQ(sw.entries.size(), 1u);
    EXPECT_EQ(sw.entries[0].policy.action, sw.owner == tamperer ? Action::Allow : Action::Drop);
  }
}

TEST(RunScenarioTest, AuditLogCoversEveryPublish) {
  std::ostringstream audit;
  RunOptions options;
  options.auditLog = &audit;
  const auto report = runScenario(builtinScenario("t2c2"), options);
  std::istringstream lines(audit.str());
  std::string line;
  std::uint64_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = json::parse(line);
    EXPECT_EQ(j.at("seq").get<std::uint64_t>(), ++count);
  }
  EXPECT_EQ(count, report.perRound[0].metrics.publishes);
}

TEST(RunScenarioTest, RepeatedRunsAreIdentical) {
  const auto s = loadScenario(kData + "/badmouth_3x6.json");
  EXPECT_EQ(reportToJson(runScenario(s)).dump(), reportToJson(runScenario(s)).dump());
}

TEST(RunScenarioTest, DeskScaleRoundUnderOneSecond) {
  const auto started = std::chrono::steady_clock::now();
  const auto report = runScenario(builtinScenario("t1c3"));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  EXPECT_LT(elapsed.count(), 1.0);
  EXPECT_LT(report.wallSeconds[0], 1.0);
}

TEST(ReportJsonTest, RoundTrips) {
  auto s = builtinScenario("t3c1");
  s.rounds = 2;
  const auto report = runScenario(s);
  EXPECT_EQ(reportFromJson(reportToJson(report, true)), report);
  auto untimed = report;
  untimed.wallSeconds.clear();
  EXPECT_EQ(reportFromJson(reportToJson(report, false)), untimed);
  EXPECT_FALSE(reportToJson(report).contains("timing"));
}

TEST(ReportCsvTest, OneRowPerRoundWithOracleTotals) {
  std::vector<RunReport> reports;
  for (const char* name : {"t2c1", "t2c2", "t2c3", "t2c4"}) reports.push_back(runScenario(builtinScenario(name)));
  const auto csv = renderCsv(reports);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("scenario,round,controllers,switches", 0), 0u);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string col; std::getline(ss, col, ',');) cols.push_back(col);
    ASSERT_EQ(cols.size(), 12u);
    const int n = std::stoi(cols[2]), m = std::stoi(cols[3]);
    EXPECT_EQ(std::stoi(cols[7]), testing::enumerateRound(n, m).total());
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST(EmitReportTest, WritesFileAndFailsOnBadPath) {
  const auto report = runScenario(builtinScenario("t2c1"));
  const auto path = std::filesystem::temp_directory_path() / "trustnet_emit_test.json";
  emitReport(report, ReportFormat::Json, path);
  std::ifstream in(path);
  EXPECT_EQ(reportFromJson(json::parse(in)).perRound, report.perRound);
  std::filesystem::remove(path);
  try {
    emitReport(report, ReportFormat::Csv, "/nonexistent-dir/report.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(ScoreDetectionTest, CountsBothErrorKinds) {
  const ControllerId c1{1}, c2{2}, c3{3};
  const auto d = scoreDetection({{c1, Verdict::Untrusted}, {c2, Verdict::TiedNeedsReview}, {c3, Verdict::Trusted}},
                                {c2, c3});
  EXPECT_EQ(d.flaggedUntrusted, std::set<ControllerId>{c1});
  EXPECT_EQ(d.falsePositives, 1);
  EXPECT_EQ(d.falseNegatives, 2);
}

}  // namespace
}  // namespace trustnet
