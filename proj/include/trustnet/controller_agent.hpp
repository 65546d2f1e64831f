#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trustnet/domain.hpp"
#include "trustnet/noticeboard.hpp"
#include "trustnet/policy_distributor.hpp"
#include "trustnet/switch_sim.hpp"
#include "trustnet/trust_engine.hpp"

namespace trustnet {

enum class TamperMode { FlipAction, DropPolicy };

std::string_view toString(TamperMode mode);
TamperMode parseTamperMode(std::string_view text);

struct MaliciousInstall {
  TamperMode mode = TamperMode::FlipAction;
  int count = 1;

  bool operator==(const MaliciousInstall&) const = default;
};

/// Injected misbehaviour. The two faults are independent: a tamperer still
/// rates honestly, a bad-mouther still installs honestly.
struct FaultProfile {
  std::optional<MaliciousInstall> maliciousInstall;
  std::set<ControllerId> badMouthTargets;

  bool isTamperer() const { return maliciousInstall.has_value(); }
  bool isFaulty() const { return isTamperer() || !badMouthTargets.empty(); }
  bool operator==(const FaultProfile&) const = default;
};

struct RatingEntry {
  int good = 0;
  int bad = 0;
  Evidence opinion;

  bool operator==(const RatingEntry&) const = default;
};

/// What one rater reports about every other controller after a sweep.
struct RatingsMap {
  ControllerId rater;
  std::uint64_t roundId = 0;
  std::map<ControllerId, RatingEntry> perRatee;

  bool operator==(const RatingsMap&) const = default;
};

/// ratee -> trust state, as computed (or fabricated) by one rater.
using TrustReport = std::map<ControllerId, TrustState>;

void to_json(json& j, const RatingsMap& map);
void from_json(const json& j, RatingsMap& map);
json trustReportToJson(ControllerId rater, std::uint64_t roundId, const TrustReport& report);
std::pair<ControllerId, TrustReport> trustReportFromJson(const json& j);

/// One SDN controller with its Policy Checker.
///
/// The agent talks to the rest of the system only through the noticeboard
/// (assignments, commands, aggregates) and the switch fabric (installs,
/// probes). Tampering choices come from a per-agent seeded generator so runs
/// replay exactly.
class ControllerAgent {
 public:
  ControllerAgent(ControllerId id, FaultProfile faults, TrustParams params, SwitchFabric& fabric,
                  Noticeboard& board, std::uint64_t seed);

  ControllerId id() const { return id_; }
  const std::string& readerId() const { return readerId_; }
  const FaultProfile& faults() const { return faults_; }

  /// Pulls the newest assignment map from the board and applies it. Returns
  /// false if nothing new was published.
  bool syncAssignments();

  /// Installs own policies into owned switches, tampering if configured.
  void applyAssignments(const AssignmentMap& map);

  /// Reads trust_commands; true once the start command for `roundId` is seen.
  bool awaitStart(std::uint64_t roundId);

  /// Probes every switch and tallies matches for every other controller.
  RatingsMap runPolicyChecker(std::uint64_t roundId);
  void submitRatings(const RatingsMap& ratings);

  /// Reads the redistributed ratings for `roundId` (empty if not yet there).
  std::map<ControllerId, RatingsMap> fetchAggregates(std::uint64_t roundId);

  TrustReport computeTrustReport(const std::map<ControllerId, RatingsMap>& aggregated,
                                 std::uint64_t roundId) const;
  void submitTrustReport(const TrustReport& report, std::uint64_t roundId);

  const std::map<ControllerId, InteractionHistory>& histories() const { return histories_; }
  const std::set<std::string>& tamperedPolicyIds() const { return tampered_; }
  const std::optional<AssignmentMap>& assignments() const { return assignments_; }

 private:
  void chooseTamperedPolicies(const std::vector<Policy>& own);

  ControllerId id_;
  std::string readerId_;
  FaultProfile faults_;
  TrustParams params_;
  SwitchFabric* fabric_;
  Noticeboard* board_;
  std::mt19937_64 rng_;

  std::optional<AssignmentMap> assignments_;
  std::map<ControllerId, InteractionHistory> histories_;
  std::set<std::string> tampered_;
  bool tamperChosen_ = false;
  std::optional<std::uint64_t> startedRound_;
  std::map<Topic, std::uint64_t> cursors_;
};

}  // namespace trustnet
