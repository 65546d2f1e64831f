#pragma once

#include <optional>
#include <span>
#include <vector>

#include "trustnet/domain.hpp"

namespace trustnet {

/// Scores and weights for the trust pipeline.
///
/// s1 scores a match, s2 a mismatch. A mismatch must cost more than a match
/// earns (|s2| > s1). Reputation blends recommendation (w_er) with the rater's
/// own interaction evidence (w_ir); trustworthiness blends reputation (w_re)
/// with risk (w_ri). Both weight pairs sum to one.
struct TrustParams {
  double s1 = 1.0;
  double s2 = -2.0;
  double wEr = 0.2;
  double wIr = 0.8;
  double wRe = 0.5;
  double wRi = 0.5;
  int riskWindow = 10;
  double tau = 0.5;

  bool operator==(const TrustParams&) const = default;

  // Throws ValidationError naming the first violated constraint.
  void validate() const;
};

/// An opinion in [0,1], or nullopt when there was nothing to judge.
using Evidence = std::optional<double>;

/// Match/mismatch totals observed about one ratee in one round.
struct RoundTally {
  int good = 0;
  int bad = 0;

  bool operator==(const RoundTally&) const = default;
  bool hasEvidence() const { return good + bad > 0; }
};

/// One entry per round in which the ratee had something to check.
using InteractionHistory = std::vector<RoundTally>;

/// er is nullopt when no third party had an opinion about the ratee.
struct TrustState {
  Evidence er;
  double ir = 0.0;
  double re = 0.0;
  double ri = 0.0;
  double t = 0.0;

  bool operator==(const TrustState&) const = default;
};

double rate(ComparisonOutcome outcome, const TrustParams& params);

/// good*s1 / (good*s1 + bad*|s2|), nullopt when good = bad = 0.
Evidence opinionScore(int good, int bad, const TrustParams& params);

/// Own opinion over the full history; never consults peers.
Evidence computeIr(std::span<const RoundTally> history, const TrustParams& params);

/// Mean of third-party opinions, nullopt on an empty list.
Evidence computeEr(std::span<const double> peerOpinions);

/// Weighted blend; falls back to ir alone when er is absent.
double computeRe(Evidence er, double ir, const TrustParams& params);

/// 1 - risk over the most recent riskWindow rounds (higher is safer).
Evidence computeRi(std::span<const RoundTally> history, const TrustParams& params);

double computeT(double re, double ri, const TrustParams& params);

/// Full pipeline for one (rater, ratee) pair. nullopt if the history holds no
/// evidence.
std::optional<TrustState> evaluateTrust(std::span<const RoundTally> history,
                                        std::span<const double> peerOpinions,
                                        const TrustParams& params);

void to_json(json& j, const TrustParams& params);
void from_json(const json& j, TrustParams& params);
void to_json(json& j, const TrustState& state);
void from_json(const json& j, TrustState& state);

}  // namespace trustnet
