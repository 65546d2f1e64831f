#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "trustnet/controller_agent.hpp"
#include "trustnet/noticeboard.hpp"
#include "trustnet/trust_engine.hpp"

namespace trustnet {

enum class Verdict { Trusted, Untrusted, TiedNeedsReview };

std::string_view toString(Verdict verdict);
Verdict parseVerdict(std::string_view text);

/// Ties are escalated for review but do not flag the controller.
inline bool countsAsTrusted(Verdict v) { return v != Verdict::Untrusted; }

using RaterRatee = std::pair<ControllerId, ControllerId>;

struct RoundReport {
  std::uint64_t roundId = 0;
  std::map<RaterRatee, TrustState> perPair;
  std::map<ControllerId, double> aggregateT;
  std::map<ControllerId, Verdict> verdicts;
  /// Mean Ri over each rater's ratees; informational only.
  std::map<ControllerId, double> raterRisk;
  MessageMetrics metrics;

  bool operator==(const RoundReport&) const = default;
};

void to_json(json& j, const RoundReport& report);
void from_json(const json& j, RoundReport& report);

/// Majority vote per ratee over raters' thresholded t (t >= tau is a trust
/// vote). Raters with no evidence about a ratee do not vote; a ratee nobody
/// voted on gets no verdict.
RoundReport aggregateVerdicts(std::uint64_t roundId, const std::map<ControllerId, TrustReport>& reports,
                              const TrustParams& params);

inline constexpr const char* kTrustCollectorId = "TC";

/// Central trust manager driving one round at a time over the board.
class TrustCollector {
 public:
  TrustCollector(std::vector<ControllerId> controllers, TrustParams params, Noticeboard& board);

  /// Publishes startTrustCalculation. Throws RoundAlreadyOpen.
  void startRound(std::uint64_t roundId);

  /// Consumes one ratings map per controller and publishes them all as one
  /// aggregate. Throws DuplicateRating (first submission kept) or MissingRating.
  void collectAndRedistribute(std::uint64_t roundId);

  /// Consumes all trust reports, publishes the verdicts, closes the round.
  /// Throws MissingReports.
  RoundReport aggregateVerdicts(std::uint64_t roundId);

  std::optional<std::uint64_t> openRound() const { return open_; }
  const std::map<ControllerId, RatingsMap>& collectedRatings() const { return ratings_; }

 private:
  void requireOpen(std::uint64_t roundId) const;

  std::vector<ControllerId> controllers_;
  TrustParams params_;
  Noticeboard* board_;
  std::optional<std::uint64_t> open_;
  std::map<ControllerId, RatingsMap> ratings_;
  std::map<ControllerId, TrustReport> reports_;
  std::map<Topic, std::uint64_t> cursors_;
};

}  // namespace trustnet
