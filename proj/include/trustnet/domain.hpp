#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace trustnet {

using json = nlohmann::json;

/// Controller identity. Index 1 renders as "C1".
struct ControllerId {
  std::uint32_t index = 0;

  auto operator<=>(const ControllerId&) const = default;
  std::string str() const { return "C" + std::to_string(index); }
};

/// Switch identity. Index 1 renders as "S1".
struct SwitchId {
  std::uint32_t index = 0;

  auto operator<=>(const SwitchId&) const = default;
  std::string str() const { return "S" + std::to_string(index); }
};

enum class Action { Drop, Allow };

std::string_view toString(Action action);
Action parseAction(std::string_view text);

/// A flow tuple, e.g. {srcIP='8.8.8.8', action='drop'}.
///
/// Equality compares the match map and the action only; the id is a handle
/// used to key flow tables and assignment lists.
struct Policy {
  std::string id;
  std::map<std::string, std::string> match;
  Action action = Action::Drop;

  bool operator==(const Policy& other) const {
    return match == other.match && action == other.action;
  }

  // Throws ValidationError when the match map is empty or the id is blank.
  void validate() const;
};

struct FlowEntry {
  Policy policy;
  ControllerId installedBy;

  bool operator==(const FlowEntry& other) const {
    return policy.id == other.policy.id && policy == other.policy &&
           installedBy == other.installedBy;
  }
};

enum class ComparisonOutcome { Match, Mismatch };

/// Match iff some entry carries a policy equal to `expected`. Entries that
/// were never assigned are ignored.
ComparisonOutcome comparePolicy(const Policy& expected, std::span<const FlowEntry> flowTable);

ControllerId parseControllerId(const json& j);
SwitchId parseSwitchId(const json& j);

void to_json(json& j, const ControllerId& id);
void from_json(const json& j, ControllerId& id);
void to_json(json& j, const SwitchId& id);
void from_json(const json& j, SwitchId& id);
void to_json(json& j, const Policy& policy);
void from_json(const json& j, Policy& policy);
void to_json(json& j, const FlowEntry& entry);
void from_json(const json& j, FlowEntry& entry);

}  // namespace trustnet
