#include "trustnet/policy_distributor.hpp"

#include <gtest/gtest.h>

#include "trustnet/error.hpp"

namespace trustnet {
namespace {

const std::vector<ControllerId> kThree{ControllerId{1}, ControllerId{2}, ControllerId{3}};
const Policy kDrop8{"policy1", {{"srcIP", "8.8.8.8"}}, Action::Drop};

TEST(PolicyDistributorTest, EveryControllerHasAnEntry) {
  Noticeboard board;
  PolicyDistributor pd(kThree, board);
  EXPECT_EQ(pd.assignments().size(), 3u);
  for (const auto& [_, list] : pd.assignments()) EXPECT_TRUE(list.empty());
}

TEST(PolicyDistributorTest, DefineAppendsAndReplacesById) {
  Noticeboard board;
  PolicyDistributor pd(kThree, board);
  pd.definePolicy(ControllerId{1}, kDrop8);
  ASSERT_EQ(pd.assignments().at(ControllerId{1}).size(), 1u);
  Policy updated = kDrop8;
  updated.action = Action::Allow;
  pd.definePolicy(ControllerId{1}, updated);
  ASSERT_EQ(pd.assignments().at(ControllerId{1}).size(), 1u);
  EXPECT_EQ(pd.assignments().at(ControllerId{1})[0].action, Action::Allow);
}

TEST(PolicyDistributorTest, UnknownController) {
  Noticeboard board;
  PolicyDistributor pd(kThree, board);
  try {
    pd.definePolicy(ControllerId{99}, kDrop8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownController);
  }
}

TEST(PolicyDistributorTest, PushIsOneWriteOfTheWholeMap) {
  Noticeboard board;
  for (auto c : kThree) board.registerReader(c.str());
  PolicyDistributor pd(kThree, board);
  pd.definePolicy(ControllerId{2}, kDrop8);
  board.beginRound(1);
  pd.pushAssignments(1);
  EXPECT_EQ(board.liveMetrics(1).publishes, 1u);

  // Every reader decodes the same map, equal to the definitions.
  for (auto c : kThree) {
    const auto msgs = board.poll(Topic::PolicyAssignments, c.str(), 0);
    ASSERT_EQ(msgs.size(), 1u);
    const auto decoded = assignmentsFromJson(msgs[0].payload);
    EXPECT_EQ(decoded, pd.assignments());
    EXPECT_EQ(msgs[0].payload.dump(), assignmentsToJson(pd.assignments()).dump());
  }
}

TEST(PolicyDistributorTest, EmptyMapStillOneMessage) {
  Noticeboard board;
  PolicyDistributor pd({}, board);
  pd.pushAssignments(1);
  ASSERT_EQ(board.log().size(), 1u);
  EXPECT_TRUE(board.log()[0].payload.empty());
}

TEST(PolicyDistributorTest, SuccessivePushesCarryRoundIds) {
  Noticeboard board;
  PolicyDistributor pd(kThree, board);
  pd.pushAssignments(1);
  pd.pushAssignments(2);
  ASSERT_EQ(board.log().size(), 2u);
  EXPECT_EQ(board.log()[0].roundId, 1u);
  EXPECT_EQ(board.log()[1].roundId, 2u);
}

TEST(AssignmentsJsonTest, RejectsDuplicateIdsAndUnknownFields) {
  EXPECT_THROW(assignmentsFromJson(json::parse(
                   R"([{"controller": "C1", "policies": [
                        {"id": "a", "match": {"srcIP": "1.1.1.1"}, "action": "drop"},
                        {"id": "a", "match": {"srcIP": "2.2.2.2"}, "action": "drop"}]}])")),
               Error);
  EXPECT_THROW(assignmentsFromJson(json::parse(R"([{"controller": "C1", "rules": []}])")), Error);
}

}  // namespace
}  // namespace trustnet
