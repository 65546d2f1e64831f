#include "trustnet/policy_distributor.hpp"

#include <algorithm>
#include <set>

#include "trustnet/error.hpp"

namespace trustnet {

json assignmentsToJson(const AssignmentMap& map) {
  json out = json::array();
  for (const auto& [controller, policies] : map) {
    out.push_back(json{{"controller", controller}, {"policies", policies}});
  }
  return out;
}

AssignmentMap assignmentsFromJson(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "assignments must be a list");
  AssignmentMap out;
  for (const auto& item : j) {
    if (!item.is_object()) throw Error(ErrorCode::ParseError, "assignment entry must be an object");
    for (const auto& [key, _] : item.items()) {
      if (key != "controller" && key != "policies") {
        throw Error(ErrorCode::ValidationError, "unknown field assignments[]." + key);
      }
    }
    if (!item.contains("controller")) {
      throw Error(ErrorCode::ValidationError, "assignments[].controller is required");
    }
    const auto controller = parseControllerId(item.at("controller"));
    auto& list = out[controller];
    std::set<std::string> seen;
    for (const auto& p : item.value("policies", json::array())) {
      auto policy = p.get<Policy>();
      if (!seen.insert(policy.id).second) {
        throw Error(ErrorCode::ValidationError,
                    "assignments: duplicate policy id '" + policy.id + "' for " + controller.str());
      }
      list.push_back(std::move(policy));
    }
  }
  return out;
}

PolicyDistributor::PolicyDistributor(const std::vector<ControllerId>& controllers, Noticeboard& board)
    : board_(&board) {
  for (auto c : controllers) assignments_[c];
}

void PolicyDistributor::definePolicy(ControllerId controller, const Policy& policy) {
  auto it = assignments_.find(controller);
  if (it == assignments_.end()) throw Error(ErrorCode::UnknownController, controller.str());
  policy.validate();
  auto& list = it->second;
  auto existing = std::find_if(list.begin(), list.end(),
                               [&](const Policy& p) { return p.id == policy.id; });
  if (existing != list.end()) {
    *existing = policy;
  } else {
    list.push_back(policy);
  }
}

std::uint64_t PolicyDistributor::pushAssignments(std::uint64_t roundId) {
  return board_->publish(Topic::PolicyAssignments, kPolicyDistributorId, roundId,
                         assignmentsToJson(assignments_));
}

}  // namespace trustnet
