#include "trustnet/controller_agent.hpp"

#include <algorithm>
#include <iterator>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

std::mt19937_64 seededGenerator(std::uint64_t seed, ControllerId id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    id.index};
  return std::mt19937_64(seq);
}

json evidenceToJson(const Evidence& e) { return e ? json(*e) : json(nullptr); }
Evidence evidenceFromJson(const json& j) { return j.is_null() ? Evidence{} : Evidence{j.get<double>()}; }

}  // namespace

std::string_view toString(TamperMode mode) {
  return mode == TamperMode::FlipAction ? "flipAction" : "dropPolicy";
}

TamperMode parseTamperMode(std::string_view text) {
  if (text == "flipAction" || text == "flip_action") return TamperMode::FlipAction;
  if (text == "dropPolicy" || text == "drop_policy") return TamperMode::DropPolicy;
  throw Error(ErrorCode::ValidationError, "unknown tamper mode '" + std::string(text) + "'");
}

void to_json(json& j, const RatingsMap& map) {
  json entries = json::array();
  for (const auto& [ratee, e] : map.perRatee) {
    entries.push_back(
        json{{"ratee", ratee}, {"good", e.good}, {"bad", e.bad}, {"opinion", evidenceToJson(e.opinion)}});
  }
  j = json{{"rater", map.rater}, {"round", map.roundId}, {"per_ratee", std::move(entries)}};
}

void from_json(const json& j, RatingsMap& map) {
  map.rater = j.at("rater").get<ControllerId>();
  map.roundId = j.at("round").get<std::uint64_t>();
  map.perRatee.clear();
  for (const auto& e : j.at("per_ratee")) {
    map.perRatee[e.at("ratee").get<ControllerId>()] =
        RatingEntry{e.at("good").get<int>(), e.at("bad").get<int>(), evidenceFromJson(e.at("opinion"))};
  }
}

json trustReportToJson(ControllerId rater, std::uint64_t roundId, const TrustReport& report) {
  json states = json::array();
  for (const auto& [ratee, state] : report) {
    json s = state;
    s["ratee"] = ratee;
    states.push_back(std::move(s));
  }
  return json{{"rater", rater}, {"round", roundId}, {"states", std::move(states)}};
}

std::pair<ControllerId, TrustReport> trustReportFromJson(const json& j) {
  TrustReport report;
  for (const auto& s : j.at("states")) report[s.at("ratee").get<ControllerId>()] = s.get<TrustState>();
  return {j.at("rater").get<ControllerId>(), std::move(report)};
}

ControllerAgent::ControllerAgent(ControllerId id, FaultProfile faults, TrustParams params,
                                 SwitchFabric& fabric, Noticeboard& board, std::uint64_t seed)
    : id_(id),
      readerId_(id.str()),
      faults_(std::move(faults)),
      params_(params),
      fabric_(&fabric),
      board_(&board),
      rng_(seededGenerator(seed, id)) {
  if (faults_.badMouthTargets.contains(id_)) {
    throw Error(ErrorCode::ValidationError, id_.str() + " cannot bad-mouth itself");
  }
  board_->registerReader(readerId_);
}

bool ControllerAgent::syncAssignments() {
  auto& cursor = cursors_[Topic::PolicyAssignments];
  auto fresh = board_->poll(Topic::PolicyAssignments, readerId_, cursor);
  if (fresh.empty()) return false;
  cursor = fresh.back().seq;
  applyAssignments(assignmentsFromJson(fresh.back().payload));
  return true;
}

void ControllerAgent::chooseTamperedPolicies(const std::vector<Policy>& own) {
  if (tamperChosen_ || !faults_.maliciousInstall || own.empty()) return;
  const auto count = static_cast<std::size_t>(faults_.maliciousInstall->count);
  if (count > own.size()) {
    throw Error(ErrorCode::ValidationError,
                id_.str() + ": malicious_install.count exceeds assigned policies");
  }
  std::vector<std::string> ids;
  for (const auto& p : own) ids.push_back(p.id);
  std::vector<std::string> picked;
  std::sample(ids.begin(), ids.end(), std::back_inserter(picked), count, rng_);
  tampered_.insert(picked.begin(), picked.end());
  tamperChosen_ = true;
}

void ControllerAgent::applyAssignments(const AssignmentMap& map) {
  assignments_ = map;
  for (const auto& [peer, _] : map) {
    if (peer != id_) histories_[peer];
  }
  auto it = map.find(id_);
  if (it == map.end()) return;
  const auto& own = it->second;
  chooseTamperedPolicies(own);

  const auto owned = fabric_->ownedBy(id_);
  for (const auto& policy : own) {
    Policy installed = policy;
    if (tampered_.contains(policy.id)) {
      if (faults_.maliciousInstall->mode == TamperMode::DropPolicy) continue;
      installed.action = policy.action == Action::Drop ? Action::Allow : Action::Drop;
    }
    for (auto sw : owned) fabric_->installFlow(sw, installed, id_);
  }
}

bool ControllerAgent::awaitStart(std::uint64_t roundId) {
  auto& cursor = cursors_[Topic::TrustCommands];
  for (const auto& msg : board_->poll(Topic::TrustCommands, readerId_, cursor)) {
    cursor = msg.seq;
    if (msg.roundId == roundId && msg.payload.value("command", "") == "startTrustCalculation") {
      startedRound_ = roundId;
    }
  }
  return startedRound_ == roundId;
}

RatingsMap ControllerAgent::runPolicyChecker(std::uint64_t roundId) {
  if (!assignments_) throw Error(ErrorCode::MissingAssignments, id_.str());
  if (startedRound_ != roundId) {
    throw Error(ErrorCode::RoundNotOpen,
                id_.str() + " has not seen startTrustCalculation for round " + std::to_string(roundId));
  }

  std::map<ControllerId, RoundTally> tallies;
  for (const auto& [peer, _] : *assignments_) {
    if (peer != id_) tallies[peer];
  }

  // Own switches are probed too, so one sweep touches all M switches; only
  // peers are rated.
  for (auto sw : fabric_->allSwitches()) {
    const auto table = fabric_->fetchFlowTable(sw, id_);
    const auto owner = fabric_->at(sw).owner();
    if (owner == id_) continue;
    auto assigned = assignments_->find(owner);
    if (assigned == assignments_->end()) continue;
    auto& tally = tallies[owner];
    for (const auto& policy : assigned->second) {
      if (comparePolicy(policy, table) == ComparisonOutcome::Match) {
        ++tally.good;
      } else {
        ++tally.bad;
      }
    }
  }

  RatingsMap out{id_, roundId, {}};
  for (const auto& [peer, tally] : tallies) {
    if (tally.hasEvidence()) histories_[peer].push_back(tally);
    RatingEntry entry{tally.good, tally.bad, opinionScore(tally.good, tally.bad, params_)};
    if (faults_.badMouthTargets.contains(peer)) {
      entry = RatingEntry{0, tally.good + tally.bad, 0.0};
    }
    out.perRatee[peer] = entry;
  }
  return out;
}

void ControllerAgent::submitRatings(const RatingsMap& ratings) {
  board_->publish(Topic::RatingsSubmissions, readerId_, ratings.roundId, json(ratings));
}

std::map<ControllerId, RatingsMap> ControllerAgent::fetchAggregates(std::uint64_t roundId) {
  std::map<ControllerId, RatingsMap> out;
  auto& cursor = cursors_[Topic::AggregatedRatings];
  for (const auto& msg : board_->poll(Topic::AggregatedRatings, readerId_, cursor)) {
    cursor = msg.seq;
    if (msg.roundId != roundId) continue;
    out.clear();
    for (const auto& r : msg.payload.at("ratings")) {
      auto map = r.get<RatingsMap>();
      out[map.rater] = std::move(map);
    }
  }
  return out;
}

TrustReport ControllerAgent::computeTrustReport(const std::map<ControllerId, RatingsMap>& aggregated,
                                                std::uint64_t roundId) const {
  if (!assignments_) throw Error(ErrorCode::MissingAssignments, id_.str());
  for (const auto& [controller, _] : *assignments_) {
    auto it = aggregated.find(controller);
    if (it == aggregated.end() || it->second.roundId != roundId) {
      throw Error(ErrorCode::MissingAggregates,
                  id_.str() + " lacks " + controller.str() + "'s ratings for round " +
                      std::to_string(roundId));
    }
  }

  TrustReport report;
  for (const auto& [ratee, history] : histories_) {
    if (faults_.badMouthTargets.contains(ratee)) {
      report[ratee] = TrustState{0.0, 0.0, 0.0, 0.0, 0.0};
      continue;
    }
    std::vector<double> peerOpinions;
    for (const auto& [rater, ratings] : aggregated) {
      if (rater == id_ || rater == ratee) continue;
      auto entry = ratings.perRatee.find(ratee);
      if (entry != ratings.perRatee.end() && entry->second.opinion) {
        peerOpinions.push_back(*entry->second.opinion);
      }
    }
    if (auto state = evaluateTrust(history, peerOpinions, params_)) report[ratee] = *state;
  }
  return report;
}

void ControllerAgent::submitTrustReport(const TrustReport& report, std::uint64_t roundId) {
  board_->publish(Topic::TrustReports, readerId_, roundId, trustReportToJson(id_, roundId, report));
}

}  // namespace trustnet
