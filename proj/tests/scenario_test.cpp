#include "trustnet/scenario.hpp"

#include <gtest/gtest.h>

#include "trustnet/error.hpp"

namespace trustnet {
namespace {

const std::string kData = TRUSTNET_TEST_DATA;

ErrorCode loadError(const std::string& file) {
  try {
    loadScenario(kData + "/" + file);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << file << " loaded without error";
  return ErrorCode::IoError;
}

std::string loadMessage(const std::string& file) {
  try {
    loadScenario(kData + "/" + file);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(LoadScenarioTest, DetectionConfigLoads) {
  const auto s = loadScenario(kData + "/t1c1_config.json");
  EXPECT_EQ(s.controllers, 5);
  EXPECT_EQ(s.switchCount(), 10);
  EXPECT_EQ(s.tamperers().size(), 2u);
  EXPECT_EQ(s.seed, 7u);
}

TEST(LoadScenarioTest, WeightSumViolation) {
  EXPECT_EQ(loadError("bad_weights.json"), ErrorCode::ValidationError);
  EXPECT_NE(loadMessage("bad_weights.json").find("w_ir"), std::string::npos);
}

TEST(LoadScenarioTest, ScoreMagnitudeViolation) {
  EXPECT_EQ(loadError("bad_scores.json"), ErrorCode::ValidationError);
  EXPECT_NE(loadMessage("bad_scores.json").find("s2"), std::string::npos);
}

TEST(LoadScenarioTest, UnknownKeyRejected) {
  EXPECT_EQ(loadError("unknown_key.json"), ErrorCode::ValidationError);
  EXPECT_NE(loadMessage("unknown_key.json").find("topology"), std::string::npos);
}

TEST(LoadScenarioTest, MalformedAndMissing) {
  EXPECT_EQ(loadError("malformed.json"), ErrorCode::ParseError);
  EXPECT_EQ(loadError("does_not_exist.json"), ErrorCode::IoError);
}

TEST(ScenarioFromJsonTest, ValidatesReferences) {
  auto code = [](const char* text) {
    try {
      scenarioFromJson(json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code(R"({"controllers": 0, "switches_per_controller": 1})"), ErrorCode::ValidationError);
  EXPECT_EQ(code(R"({"controllers": 2, "switches_per_controller": 1, "rounds": 0})"), ErrorCode::ValidationError);
  EXPECT_EQ(code(R"({"controllers": 2, "switches_per_controller": 1,
                     "faults": [{"controller": "C1", "bad_mouth": ["C1"]}]})"),
            ErrorCode::ValidationError);
  EXPECT_EQ(code(R"({"controllers": 2, "switches_per_controller": 1,
                     "faults": [{"controller": "C3", "bad_mouth": ["C1"]}]})"),
            ErrorCode::ValidationError);
  EXPECT_EQ(code(R"({"controllers": 2, "switches_per_controller": 1,
                     "faults": [{"controller": "C1", "malicious_install": {"mode": "flipAction", "count": 1}}]})"),
            ErrorCode::ValidationError);
  EXPECT_EQ(code(R"({"controllers": 2})"), ErrorCode::ValidationError);
  EXPECT_EQ(code(R"([1, 2])"), ErrorCode::ParseError);
}

TEST(ScenarioFromJsonTest, FillsDefaultsAndRoundTrips) {
  const auto s = scenarioFromJson(json::parse(R"({"controllers": 3, "switches_per_controller": 2})"));
  EXPECT_EQ(s.assignments.size(), 3u);
  EXPECT_EQ(s.rounds, 1);
  EXPECT_EQ(s.trustParams, TrustParams{});
  EXPECT_EQ(scenarioFromJson(scenarioToJson(s)), s);
}

TEST(ScenarioLayoutTest, EvenAndUnevenDeals) {
  Scenario even;
  even.controllers = 3;
  even.switchesPerController = 2;
  const auto layout = even.switchLayout();
  ASSERT_EQ(layout.size(), 6u);
  EXPECT_EQ(layout[0].second, ControllerId{1});
  EXPECT_EQ(layout[5].second, ControllerId{3});

  Scenario uneven;
  uneven.controllers = 9;
  uneven.totalSwitches = 24;
  std::map<ControllerId, int> owned;
  for (const auto& [_, c] : uneven.switchLayout()) ++owned[c];
  EXPECT_EQ(uneven.switchLayout().size(), 24u);
  for (const auto& [c, n] : owned) EXPECT_EQ(n, c.index <= 6 ? 3 : 2);
}

TEST(BuiltinScenarioTest, DetectionConfigs) {
  struct Row {
    const char* name;
    int n, m, malicious;
  };
  for (const auto& [name, n, m, malicious] :
       {Row{"t1c1", 5, 10, 2}, Row{"t1c2", 10, 20, 4}, Row{"t1c3", 15, 30, 6}}) {
    const auto s = builtinScenario(name, 3);
    EXPECT_EQ(s.controllers, n) << name;
    EXPECT_EQ(s.switchCount(), m) << name;
    EXPECT_EQ(static_cast<int>(s.tamperers().size()), malicious) << name;
    for (const auto& f : s.faults) {
      EXPECT_EQ(f.profile.maliciousInstall, (MaliciousInstall{TamperMode::FlipAction, 1}));
    }
  }
}

TEST(BuiltinScenarioTest, MessageConfigs) {
  EXPECT_EQ(builtinScenario("t2c1").switchCount(), 3);
  EXPECT_EQ(builtinScenario("t2c2").switchCount(), 6);
  EXPECT_EQ(builtinScenario("t2c3").switchCount(), 12);
  EXPECT_EQ(builtinScenario("t2c4").switchCount(), 27);
  const auto msg = builtinScenario("msg250");
  EXPECT_EQ(msg.controllers, 9);
  EXPECT_EQ(msg.switchCount(), 24);
}

TEST(BuiltinScenarioTest, BadMouthConfigs) {
  const auto s = builtinScenario("t3c3");
  EXPECT_EQ(s.controllers, 6);
  EXPECT_EQ(s.switchCount(), 12);
  EXPECT_EQ(s.faultsFor(ControllerId{1}).badMouthTargets,
            (std::set<ControllerId>{ControllerId{2}, ControllerId{3}}));
  EXPECT_TRUE(s.tamperers().empty());
  const auto four = builtinScenario("t3c4");
  EXPECT_EQ(four.faultsFor(ControllerId{2}).badMouthTargets,
            (std::set<ControllerId>{ControllerId{3}, ControllerId{4}}));
}

TEST(BuiltinScenarioTest, SeedPicksTamperersDeterministically) {
  EXPECT_EQ(builtinScenario("t1c2", 5), builtinScenario("t1c2", 5));
  std::set<std::set<ControllerId>> distinct;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) distinct.insert(builtinScenario("t1c2", seed).tamperers());
  EXPECT_GT(distinct.size(), 1u);
}

TEST(BuiltinScenarioTest, UnknownName) {
  try {
    builtinScenario("t9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownScenario);
  }
}

}  // namespace
}  // namespace trustnet
