#include "trustnet/trust_engine.hpp"

#include <cmath>
#include <numeric>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

constexpr double kWeightTolerance = 1e-9;

bool isUnit(double w) { return w >= 0.0 && w <= 1.0; }

void requireValid(bool ok, const char* field, const char* constraint) {
  if (!ok) {
    throw Error(ErrorCode::ValidationError,
                std::string("trust_params.") + field + ": " + constraint);
  }
}

RoundTally sumTallies(std::span<const RoundTally> rounds) {
  RoundTally total;
  for (const auto& r : rounds) {
    total.good += r.good;
    total.bad += r.bad;
  }
  return total;
}

}  // namespace

void TrustParams::validate() const {
  requireValid(std::isfinite(s1) && s1 > 0.0, "s1", "must be > 0");
  requireValid(std::isfinite(s2) && s2 < 0.0, "s2", "must be < 0");
  requireValid(std::abs(s2) > s1, "s2", "|s2| must exceed s1");
  requireValid(isUnit(wEr), "w_er", "must lie in [0,1]");
  requireValid(isUnit(wIr), "w_ir", "must lie in [0,1]");
  requireValid(std::abs(wEr + wIr - 1.0) <= kWeightTolerance, "w_ir", "w_er + w_ir must equal 1");
  requireValid(isUnit(wRe), "w_re", "must lie in [0,1]");
  requireValid(isUnit(wRi), "w_ri", "must lie in [0,1]");
  requireValid(std::abs(wRe + wRi - 1.0) <= kWeightTolerance, "w_ri", "w_re + w_ri must equal 1");
  requireValid(riskWindow >= 1, "risk_window", "must be >= 1");
  requireValid(isUnit(tau), "tau", "must lie in [0,1]");
}

double rate(ComparisonOutcome outcome, const TrustParams& params) {
  return outcome == ComparisonOutcome::Match ? params.s1 : params.s2;
}

Evidence opinionScore(int good, int bad, const TrustParams& params) {
  if (good == 0 && bad == 0) return std::nullopt;
  const double positive = good * params.s1;
  const double negative = bad * std::abs(params.s2);
  return positive / (positive + negative);
}

Evidence computeIr(std::span<const RoundTally> history, const TrustParams& params) {
  const auto total = sumTallies(history);
  return opinionScore(total.good, total.bad, params);
}

Evidence computeEr(std::span<const double> peerOpinions) {
  if (peerOpinions.empty()) return std::nullopt;
  const double sum = std::accumulate(peerOpinions.begin(), peerOpinions.end(), 0.0);
  return sum / static_cast<double>(peerOpinions.size());
}

double computeRe(Evidence er, double ir, const TrustParams& params) {
  if (!er) return ir;
  return params.wEr * *er + params.wIr * ir;
}

Evidence computeRi(std::span<const RoundTally> history, const TrustParams& params) {
  const auto window = std::min<std::size_t>(history.size(), static_cast<std::size_t>(params.riskWindow));
  const auto recent = sumTallies(history.last(window));
  if (!recent.hasEvidence()) return std::nullopt;
  const double positive = recent.good * params.s1;
  const double negative = recent.bad * std::abs(params.s2);
  return 1.0 - negative / (positive + negative);
}

double computeT(double re, double ri, const TrustParams& params) {
  return params.wRe * re + params.wRi * ri;
}

std::optional<TrustState> evaluateTrust(std::span<const RoundTally> history,
                                        std::span<const double> peerOpinions,
                                        const TrustParams& params) {
  const auto ir = computeIr(history, params);
  const auto ri = computeRi(history, params);
  if (!ir || !ri) return std::nullopt;
  TrustState state;
  state.er = computeEr(peerOpinions);
  state.ir = *ir;
  state.re = computeRe(state.er, state.ir, params);
  state.ri = *ri;
  state.t = computeT(state.re, state.ri, params);
  return state;
}

void to_json(json& j, const TrustParams& p) {
  j = json{{"s1", p.s1},   {"s2", p.s2},   {"w_er", p.wEr},
           {"w_ir", p.wIr}, {"w_re", p.wRe}, {"w_ri", p.wRi},
           {"risk_window", p.riskWindow},    {"tau", p.tau}};
}

void from_json(const json& j, TrustParams& p) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "trust_params must be an object");
  TrustParams out;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "s1") out.s1 = value.get<double>();
      else if (key == "s2") out.s2 = value.get<double>();
      else if (key == "w_er") out.wEr = value.get<double>();
      else if (key == "w_ir") out.wIr = value.get<double>();
      else if (key == "w_re") out.wRe = value.get<double>();
      else if (key == "w_ri") out.wRi = value.get<double>();
      else if (key == "risk_window") out.riskWindow = value.get<int>();
      else if (key == "tau") out.tau = value.get<double>();
      else throw Error(ErrorCode::ValidationError, "unknown field trust_params." + key);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::ParseError, "trust_params." + key + ": " + e.what());
    }
  }
  p = out;
}

void to_json(json& j, const TrustState& s) {
  j = json{{"er", s.er ? json(*s.er) : json(nullptr)}, {"ir", s.ir}, {"re", s.re}, {"ri", s.ri}, {"t", s.t}};
}

void from_json(const json& j, TrustState& s) {
  const auto& er = j.at("er");
  s.er = er.is_null() ? Evidence{} : Evidence{er.get<double>()};
  s.ir = j.at("ir").get<double>();
  s.re = j.at("re").get<double>();
  s.ri = j.at("ri").get<double>();
  s.t = j.at("t").get<double>();
}

}  // namespace trustnet
