#include "trustnet/switch_sim.hpp"

#include <gtest/gtest.h>

#include "trustnet/error.hpp"

namespace trustnet {
namespace {

const Policy kDrop8{"policy1", {{"srcIP", "8.8.8.8"}}, Action::Drop};

class SwitchSimTest : public ::testing::Test {
 protected:
  void SetUp() override {
    fabric.addSwitch(SwitchId{1}, ControllerId{1});
    fabric.addSwitch(SwitchId{2}, ControllerId{2});
    board.beginRound(1);
  }
  Noticeboard board;
  SwitchFabric fabric{board};
};

TEST_F(SwitchSimTest, FreshSwitchIsEmpty) {
  EXPECT_TRUE(fabric.fetchFlowTable(SwitchId{1}, ControllerId{2}).empty());
}

TEST_F(SwitchSimTest, InstallThenFetch) {
  fabric.installFlow(SwitchId{1}, kDrop8, ControllerId{1});
  const auto table = fabric.fetchFlowTable(SwitchId{1}, ControllerId{2});
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].policy, kDrop8);
  EXPECT_EQ(table[0].installedBy, ControllerId{1});
}

TEST_F(SwitchSimTest, ReinstallOverwritesById) {
  fabric.installFlow(SwitchId{1}, kDrop8, ControllerId{1});
  Policy allow = kDrop8;
  allow.action = Action::Allow;
  fabric.installFlow(SwitchId{1}, allow, ControllerId{1});
  const auto table = fabric.fetchFlowTable(SwitchId{1}, ControllerId{1});
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].policy.action, Action::Allow);
}

TEST_F(SwitchSimTest, UnknownSwitch) {
  try {
    fabric.installFlow(SwitchId{9}, kDrop8, ControllerId{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSwitch);
  }
  EXPECT_THROW(fabric.fetchFlowTable(SwitchId{9}, ControllerId{1}), Error);
}

TEST_F(SwitchSimTest, OnlyOwnerInstalls) {
  try {
    fabric.installFlow(SwitchId{2}, kDrop8, ControllerId{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForeignInstall);
  }
  EXPECT_EQ(fabric.at(SwitchId{2}).size(), 0u);
}

TEST_F(SwitchSimTest, FetchCountsOneProbeAndHasNoOtherEffect) {
  fabric.installFlow(SwitchId{1}, kDrop8, ControllerId{1});
  const auto before = board.liveMetrics(1);
  auto copy = fabric.fetchFlowTable(SwitchId{1}, ControllerId{2});
  copy.clear();
  EXPECT_EQ(board.liveMetrics(1).probeExchanges, before.probeExchanges + 1);
  EXPECT_EQ(board.liveMetrics(1).publishes, before.publishes);
  EXPECT_EQ(fabric.at(SwitchId{1}).size(), 1u);
}

TEST_F(SwitchSimTest, OwnershipQueries) {
  EXPECT_EQ(fabric.ownedBy(ControllerId{1}), std::vector<SwitchId>{SwitchId{1}});
  EXPECT_TRUE(fabric.ownedBy(ControllerId{3}).empty());
  EXPECT_EQ(fabric.allSwitches().size(), 2u);
  EXPECT_THROW(fabric.addSwitch(SwitchId{1}, ControllerId{3}), Error);
}

}  // namespace
}  // namespace trustnet
