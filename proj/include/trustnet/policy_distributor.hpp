#pragma once

#include <map>
#include <vector>

#include "trustnet/domain.hpp"
#include "trustnet/noticeboard.hpp"

namespace trustnet {

/// Controller -> ordered policy list. Every scenario controller has a key.
using AssignmentMap = std::map<ControllerId, std::vector<Policy>>;

json assignmentsToJson(const AssignmentMap& map);
/// Accepts the config/board layout: [{controller, policies: [Policy]}].
AssignmentMap assignmentsFromJson(const json& j);

inline constexpr const char* kPolicyDistributorId = "PD";

/// Trusted source of policy assignments; pushes the whole map each round.
class PolicyDistributor {
 public:
  PolicyDistributor(const std::vector<ControllerId>& controllers, Noticeboard& board);

  /// Appends, or replaces by id. Throws UnknownController.
  void definePolicy(ControllerId controller, const Policy& policy);

  /// One board write carrying the full map.
  std::uint64_t pushAssignments(std::uint64_t roundId);

  const AssignmentMap& assignments() const { return assignments_; }

 private:
  Noticeboard* board_;
  AssignmentMap assignments_;
};

}  // namespace trustnet
