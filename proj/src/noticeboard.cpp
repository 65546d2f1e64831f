#include "trustnet/noticeboard.hpp"

#include <algorithm>
#include <array>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

constexpr std::array<std::pair<Topic, std::string_view>, 6> kTopicNames{{
    {Topic::PolicyAssignments, "policy_assignments"},
    {Topic::TrustCommands, "trust_commands"},
    {Topic::RatingsSubmissions, "ratings_submissions"},
    {Topic::AggregatedRatings, "aggregated_ratings"},
    {Topic::TrustReports, "trust_reports"},
    {Topic::Verdicts, "verdicts"},
}};

}  // namespace

std::string_view toString(Topic topic) {
  for (const auto& [t, name] : kTopicNames) {
    if (t == topic) return name;
  }
  return "?";
}

Topic parseTopic(std::string_view name) {
  for (const auto& [t, n] : kTopicNames) {
    if (n == name) return t;
  }
  throw Error(ErrorCode::UnknownTopic, "'" + std::string(name) + "'");
}

void to_json(json& j, const MessageMetrics& m) {
  j = json{{"publishes", m.publishes},
           {"paired_reads", m.pairedReads},
           {"probe_exchanges", m.probeExchanges},
           {"total_messages", m.totalMessages()}};
}

void from_json(const json& j, MessageMetrics& m) {
  m.publishes = j.at("publishes").get<std::uint64_t>();
  m.pairedReads = j.at("paired_reads").get<std::uint64_t>();
  m.probeExchanges = j.at("probe_exchanges").get<std::uint64_t>();
}

void Noticeboard::registerReader(const std::string& reader) { readers_.insert(reader); }

void Noticeboard::beginRound(std::uint64_t roundId) {
  if (openRound_) {
    throw Error(ErrorCode::RoundAlreadyOpen, "round " + std::to_string(*openRound_) + " still open");
  }
  openRound_ = roundId;
  perRound_[roundId];
}

void Noticeboard::endRound(std::uint64_t roundId) {
  if (openRound_ != roundId) {
    throw Error(ErrorCode::RoundNotOpen, "round " + std::to_string(roundId) + " is not open");
  }
  frozen_[roundId] = perRound_[roundId];
  openRound_.reset();
}

std::uint64_t Noticeboard::publish(Topic topic, const std::string& sender, std::uint64_t roundId,
                                   json payload) {
  BoardMessage msg{lastSeq() + 1, topic, sender, roundId, std::move(payload)};
  if (audit_ != nullptr) {
    json line{{"seq", msg.seq},
              {"topic", toString(msg.topic)},
              {"sender", msg.sender},
              {"round", msg.roundId},
              {"payload", msg.payload}};
    *audit_ << line.dump() << '\n';
  }
  byTopic_[topic].push_back(log_.size());
  log_.push_back(std::move(msg));
  ++perRound_[roundId].publishes;
  return log_.back().seq;
}

std::uint64_t Noticeboard::publish(std::string_view topic, const std::string& sender,
                                   std::uint64_t roundId, json payload) {
  return publish(parseTopic(topic), sender, roundId, std::move(payload));
}

std::vector<BoardMessage> Noticeboard::poll(Topic topic, const std::string& reader,
                                            std::uint64_t afterSeq) {
  if (!readers_.contains(reader)) {
    throw Error(ErrorCode::UnknownReader, "'" + reader + "' is not registered");
  }
  std::vector<BoardMessage> out;
  auto it = byTopic_.find(topic);
  if (it == byTopic_.end()) return out;
  // Indices are in seq order, so skip straight past the cursor.
  const auto& indices = it->second;
  auto first = std::upper_bound(indices.begin(), indices.end(), afterSeq,
                                [&](std::uint64_t seq, std::size_t idx) { return seq < log_[idx].seq; });
  for (; first != indices.end(); ++first) {
    const auto& msg = log_[*first];
    if (delivered_.emplace(msg.seq, reader).second) ++perRound_[msg.roundId].pairedReads;
    out.push_back(msg);
  }
  return out;
}

void Noticeboard::recordProbe(ControllerId controller, SwitchId sw) {
  if (!openRound_) {
    throw Error(ErrorCode::RoundNotOpen,
                "probe " + controller.str() + "->" + sw.str() + " outside a trust round");
  }
  ++perRound_[*openRound_].probeExchanges;
}

MessageMetrics Noticeboard::snapshotMetrics(std::uint64_t roundId) const {
  auto it = frozen_.find(roundId);
  if (it == frozen_.end()) {
    throw Error(ErrorCode::RoundNotFinished, "round " + std::to_string(roundId));
  }
  return it->second;
}

MessageMetrics Noticeboard::liveMetrics(std::uint64_t roundId) const {
  auto it = perRound_.find(roundId);
  return it == perRound_.end() ? MessageMetrics{} : it->second;
}

}  // namespace trustnet
