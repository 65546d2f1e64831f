#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trustnet/controller_agent.hpp"
#include "trustnet/policy_distributor.hpp"
#include "trustnet/trust_engine.hpp"

namespace trustnet {

struct FaultBinding {
  ControllerId controller;
  FaultProfile profile;

  bool operator==(const FaultBinding&) const = default;
};

/// A complete, validated run description.
///
/// Controllers are C1..CN. Switches S1..SM are dealt to controllers in
/// contiguous blocks; when M is not a multiple of N the first M mod N
/// controllers get one extra switch.
struct Scenario {
  std::string name;
  int controllers = 1;
  int switchesPerController = 1;
  std::optional<int> totalSwitches;
  AssignmentMap assignments;
  std::vector<FaultBinding> faults;
  TrustParams trustParams;
  int rounds = 1;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;

  int switchCount() const { return totalSwitches.value_or(controllers * switchesPerController); }
  std::vector<ControllerId> controllerIds() const;
  std::vector<std::pair<SwitchId, ControllerId>> switchLayout() const;
  FaultProfile faultsFor(ControllerId controller) const;
  std::set<ControllerId> tamperers() const;

  /// Checks every invariant and fills empty assignment lists for controllers
  /// without policies. Throws ValidationError naming the field.
  void normalize();
};

json scenarioToJson(const Scenario& scenario);
/// Parses and normalizes. Unknown keys are rejected.
Scenario scenarioFromJson(const json& j);
/// Throws IoError, ParseError, or ValidationError.
Scenario loadScenario(const std::filesystem::path& path);

/// Built-in configurations: t1c1..t1c3, t2c1..t2c4, t3c1..t3c4, msg250.
/// Where a configuration has unnamed malicious installers, `seed` picks them.
Scenario builtinScenario(std::string_view name, std::uint64_t seed = 1);
const std::vector<std::string>& builtinNames();

/// One drop rule per controller, as used by every builtin.
AssignmentMap defaultAssignments(int controllers);

}  // namespace trustnet
