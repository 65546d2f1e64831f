#include "trustnet/trust_collector.hpp"

#include "trustnet/error.hpp"

namespace trustnet {

std::string_view toString(Verdict verdict) {
  switch (verdict) {
    case Verdict::Trusted: return "Trusted";
    case Verdict::Untrusted: return "Untrusted";
    case Verdict::TiedNeedsReview: return "TiedNeedsReview";
  }
  return "?";
}

Verdict parseVerdict(std::string_view text) {
  if (text == "Trusted") return Verdict::Trusted;
  if (text == "Untrusted") return Verdict::Untrusted;
  if (text == "TiedNeedsReview") return Verdict::TiedNeedsReview;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + std::string(text) + "'");
}

namespace {

json perControllerToJson(const std::map<ControllerId, double>& m) {
  json out = json::object();
  for (const auto& [c, v] : m) out[c.str()] = v;
  return out;
}

std::map<ControllerId, double> perControllerFromJson(const json& j) {
  std::map<ControllerId, double> out;
  for (const auto& [key, value] : j.items()) out[parseControllerId(json(key))] = value.get<double>();
  return out;
}

}  // namespace

void to_json(json& j, const RoundReport& r) {
  json pairs = json::array();
  for (const auto& [key, state] : r.perPair) {
    json p = state;
    p["rater"] = key.first;
    p["ratee"] = key.second;
    pairs.push_back(std::move(p));
  }
  json verdicts = json::object();
  for (const auto& [c, v] : r.verdicts) verdicts[c.str()] = toString(v);
  j = json{{"round", r.roundId},
           {"per_pair", std::move(pairs)},
           {"aggregate_t", perControllerToJson(r.aggregateT)},
           {"verdicts", std::move(verdicts)},
           {"rater_risk", perControllerToJson(r.raterRisk)},
           {"metrics", r.metrics}};
}

void from_json(const json& j, RoundReport& r) {
  r = RoundReport{};
  r.roundId = j.at("round").get<std::uint64_t>();
  for (const auto& p : j.at("per_pair")) {
    r.perPair[{p.at("rater").get<ControllerId>(), p.at("ratee").get<ControllerId>()}] = p.get<TrustState>();
  }
  r.aggregateT = perControllerFromJson(j.at("aggregate_t"));
  for (const auto& [key, value] : j.at("verdicts").items()) {
    r.verdicts[parseControllerId(json(key))] = parseVerdict(value.get<std::string>());
  }
  r.raterRisk = perControllerFromJson(j.at("rater_risk"));
  if (j.contains("metrics")) r.metrics = j.at("metrics").get<MessageMetrics>();
}

RoundReport aggregateVerdicts(std::uint64_t roundId, const std::map<ControllerId, TrustReport>& reports,
                              const TrustParams& params) {
  RoundReport out;
  out.roundId = roundId;

  struct Tally {
    double sumT = 0.0;
    int trusted = 0;
    int untrusted = 0;
  };
  std::map<ControllerId, Tally> byRatee;

  for (const auto& [rater, report] : reports) {
    double riskSum = 0.0;
    int counted = 0;
    for (const auto& [ratee, state] : report) {
      if (ratee == rater) continue;
      out.perPair[{rater, ratee}] = state;
      auto& tally = byRatee[ratee];
      tally.sumT += state.t;
      (state.t >= params.tau ? tally.trusted : tally.untrusted)++;
      riskSum += state.ri;
      ++counted;
    }
    if (counted > 0) out.raterRisk[rater] = riskSum / counted;
  }

  for (const auto& [ratee, tally] : byRatee) {
    const int votes = tally.trusted + tally.untrusted;
    out.aggregateT[ratee] = tally.sumT / votes;
    if (tally.untrusted > tally.trusted) {
      out.verdicts[ratee] = Verdict::Untrusted;
    } else if (tally.trusted > tally.untrusted) {
      out.verdicts[ratee] = Verdict::Trusted;
    } else {
      out.verdicts[ratee] = Verdict::TiedNeedsReview;
    }
  }
  return out;
}

TrustCollector::TrustCollector(std::vector<ControllerId> controllers, TrustParams params,
                               Noticeboard& board)
    : controllers_(std::move(controllers)), params_(params), board_(&board) {
  board_->registerReader(kTrustCollectorId);
}

void TrustCollector::requireOpen(std::uint64_t roundId) const {
  if (open_ != roundId) {
    throw Error(ErrorCode::RoundNotOpen, "trust round " + std::to_string(roundId) + " is not open");
  }
}

void TrustCollector::startRound(std::uint64_t roundId) {
  if (open_) throw Error(ErrorCode::RoundAlreadyOpen, "round " + std::to_string(*open_));
  open_ = roundId;
  ratings_.clear();
  reports_.clear();
  board_->publish(Topic::TrustCommands, kTrustCollectorId, roundId,
                  json{{"command", "startTrustCalculation"}, {"round", roundId}});
}

void TrustCollector::collectAndRedistribute(std::uint64_t roundId) {
  requireOpen(roundId);
  auto& cursor = cursors_[Topic::RatingsSubmissions];
  for (const auto& msg : board_->poll(Topic::RatingsSubmissions, kTrustCollectorId, cursor)) {
    cursor = msg.seq;
    if (msg.roundId != roundId) continue;
    auto map = msg.payload.get<RatingsMap>();
    const auto rater = map.rater;
    if (!ratings_.emplace(rater, std::move(map)).second) {
      throw Error(ErrorCode::DuplicateRating, rater.str() + " submitted twice in round " +
                                                  std::to_string(roundId));
    }
  }
  for (auto c : controllers_) {
    if (!ratings_.contains(c)) {
      throw Error(ErrorCode::MissingRating, c.str() + " in round " + std::to_string(roundId));
    }
  }
  json all = json::array();
  for (const auto& [_, map] : ratings_) all.push_back(map);
  board_->publish(Topic::AggregatedRatings, kTrustCollectorId, roundId,
                  json{{"round", roundId}, {"ratings", std::move(all)}});
}

RoundReport TrustCollector::aggregateVerdicts(std::uint64_t roundId) {
  requireOpen(roundId);
  auto& cursor = cursors_[Topic::TrustReports];
  for (const auto& msg : board_->poll(Topic::TrustReports, kTrustCollectorId, cursor)) {
    cursor = msg.seq;
    if (msg.roundId != roundId) continue;
    auto [rater, report] = trustReportFromJson(msg.payload);
    reports_.try_emplace(rater, std::move(report));
  }
  for (auto c : controllers_) {
    if (!reports_.contains(c)) {
      throw Error(ErrorCode::MissingReports, c.str() + " in round " + std::to_string(roundId));
    }
  }
  auto report = trustnet::aggregateVerdicts(roundId, reports_, params_);
  json payload = report;
  payload.erase("metrics");
  board_->publish(Topic::Verdicts, kTrustCollectorId, roundId, std::move(payload));
  open_.reset();
  return report;
}

}  // namespace trustnet
