#include "trustnet/switch_sim.hpp"

#include "trustnet/error.hpp"

namespace trustnet {

void SimSwitch::install(const Policy& policy, ControllerId installer) {
  table_.insert_or_assign(policy.id, FlowEntry{policy, installer});
}

std::vector<FlowEntry> SimSwitch::entries() const {
  std::vector<FlowEntry> out;
  out.reserve(table_.size());
  for (const auto& [_, entry] : table_) out.push_back(entry);
  return out;
}

void SwitchFabric::addSwitch(SwitchId id, ControllerId owner) {
  if (!switches_.try_emplace(id, id, owner).second) {
    throw Error(ErrorCode::ValidationError, "duplicate switch " + id.str());
  }
}

void SwitchFabric::installFlow(SwitchId sw, const Policy& policy, ControllerId installer) {
  auto it = switches_.find(sw);
  if (it == switches_.end()) throw Error(ErrorCode::UnknownSwitch, sw.str());
  if (it->second.owner() != installer) {
    throw Error(ErrorCode::ForeignInstall,
                installer.str() + " may not install into " + sw.str() + " owned by " +
                    it->second.owner().str());
  }
  it->second.install(policy, installer);
}

std::vector<FlowEntry> SwitchFabric::fetchFlowTable(SwitchId sw, ControllerId prober) const {
  const auto& target = at(sw);
  board_->recordProbe(prober, sw);
  return target.entries();
}

const SimSwitch& SwitchFabric::at(SwitchId sw) const {
  auto it = switches_.find(sw);
  if (it == switches_.end()) throw Error(ErrorCode::UnknownSwitch, sw.str());
  return it->second;
}

std::vector<SwitchId> SwitchFabric::ownedBy(ControllerId controller) const {
  std::vector<SwitchId> out;
  for (const auto& [id, sw] : switches_) {
    if (sw.owner() == controller) out.push_back(id);
  }
  return out;
}

std::vector<SwitchId> SwitchFabric::allSwitches() const {
  std::vector<SwitchId> out;
  out.reserve(switches_.size());
  for (const auto& [id, _] : switches_) out.push_back(id);
  return out;
}

}  // namespace trustnet
