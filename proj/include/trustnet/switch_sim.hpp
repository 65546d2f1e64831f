#pragma once

#include <map>
#include <string>
#include <vector>

#include "trustnet/domain.hpp"
#include "trustnet/noticeboard.hpp"

namespace trustnet {

/// A passive switch: a flow table keyed by policy id and a fixed owner.
class SimSwitch {
 public:
  SimSwitch(SwitchId id, ControllerId owner) : id_(id), owner_(owner) {}

  SwitchId id() const { return id_; }
  ControllerId owner() const { return owner_; }

  void install(const Policy& policy, ControllerId installer);
  std::vector<FlowEntry> entries() const;
  std::size_t size() const { return table_.size(); }

 private:
  SwitchId id_;
  ControllerId owner_;
  std::map<std::string, FlowEntry> table_;
};

/// All switches of a scenario. Every controller may read every switch; only
/// the owner may install.
class SwitchFabric {
 public:
  explicit SwitchFabric(Noticeboard& board) : board_(&board) {}

  void addSwitch(SwitchId id, ControllerId owner);

  /// Throws UnknownSwitch, or ForeignInstall if `installer` does not own it.
  void installFlow(SwitchId sw, const Policy& policy, ControllerId installer);

  /// Copy of the table. Counts one probe exchange on the board.
  std::vector<FlowEntry> fetchFlowTable(SwitchId sw, ControllerId prober) const;

  const SimSwitch& at(SwitchId sw) const;
  std::vector<SwitchId> ownedBy(ControllerId controller) const;
  std::vector<SwitchId> allSwitches() const;
  std::size_t size() const { return switches_.size(); }

 private:
  Noticeboard* board_;
  std::map<SwitchId, SimSwitch> switches_;
};

}  // namespace trustnet
