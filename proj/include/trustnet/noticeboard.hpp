#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trustnet/domain.hpp"

namespace trustnet {

enum class Topic {
  PolicyAssignments,
  TrustCommands,
  RatingsSubmissions,
  AggregatedRatings,
  TrustReports,
  Verdicts,
};

std::string_view toString(Topic topic);
/// Throws UnknownTopic for anything outside the closed set.
Topic parseTopic(std::string_view name);

struct BoardMessage {
  std::uint64_t seq = 0;
  Topic topic = Topic::TrustCommands;
  std::string sender;
  std::uint64_t roundId = 0;
  json payload;
};

/// Per-round message accounting. A probe (query plus reply) counts as one
/// exchange; totals are board writes plus probe exchanges.
struct MessageMetrics {
  std::uint64_t publishes = 0;
  std::uint64_t pairedReads = 0;
  std::uint64_t probeExchanges = 0;

  std::uint64_t totalMessages() const { return publishes + probeExchanges; }
  bool operator==(const MessageMetrics&) const = default;
};

void to_json(json& j, const MessageMetrics& m);
void from_json(const json& j, MessageMetrics& m);

/// In-process publish/subscribe board. Every write is appended to a totally
/// ordered log; readers pull with a cursor instead of receiving broadcasts.
class Noticeboard {
 public:
  Noticeboard() = default;
  Noticeboard(const Noticeboard&) = delete;
  Noticeboard& operator=(const Noticeboard&) = delete;

  /// Mirrors every publish as one JSON line to `sink` (nullptr disables).
  void setAuditSink(std::ostream* sink) { audit_ = sink; }

  void registerReader(const std::string& reader);

  void beginRound(std::uint64_t roundId);
  void endRound(std::uint64_t roundId);
  std::optional<std::uint64_t> openRound() const { return openRound_; }

  std::uint64_t publish(Topic topic, const std::string& sender, std::uint64_t roundId, json payload);
  std::uint64_t publish(std::string_view topic, const std::string& sender, std::uint64_t roundId,
                        json payload);

  /// Messages on `topic` with seq > afterSeq, in seq order.
  std::vector<BoardMessage> poll(Topic topic, const std::string& reader, std::uint64_t afterSeq);

  void recordProbe(ControllerId controller, SwitchId sw);

  /// Frozen counters of a closed round; throws RoundNotFinished otherwise.
  MessageMetrics snapshotMetrics(std::uint64_t roundId) const;

  /// Live counters of any round seen so far (zero if unseen).
  MessageMetrics liveMetrics(std::uint64_t roundId) const;

  const std::vector<BoardMessage>& log() const { return log_; }
  std::uint64_t lastSeq() const { return log_.empty() ? 0 : log_.back().seq; }

 private:
  std::vector<BoardMessage> log_;
  std::map<Topic, std::vector<std::size_t>> byTopic_;
  std::set<std::string> readers_;
  std::set<std::pair<std::uint64_t, std::string>> delivered_;
  std::map<std::uint64_t, MessageMetrics> perRound_;
  std::map<std::uint64_t, MessageMetrics> frozen_;
  std::optional<std::uint64_t> openRound_;
  std::ostream* audit_ = nullptr;
};

}  // namespace trustnet
