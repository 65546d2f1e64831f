#include "trustnet/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, field + ": " + why);
}

template <typename T>
T fieldAs(const json& j, const char* field) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ValidationError, std::string(field) + ": " + e.what());
  }
}

json faultToJson(const FaultBinding& f) {
  json j{{"controller", f.controller}};
  if (f.profile.maliciousInstall) {
    j["malicious_install"] = json{{"mode", toString(f.profile.maliciousInstall->mode)},
                                  {"count", f.profile.maliciousInstall->count}};
  }
  if (!f.profile.badMouthTargets.empty()) {
    json targets = json::array();
    for (auto t : f.profile.badMouthTargets) targets.push_back(t);
    j["bad_mouth"] = std::move(targets);
  }
  return j;
}

FaultBinding faultFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "faults[] must be an object");
  FaultBinding out;
  bool haveController = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "controller") {
      out.controller = parseControllerId(value);
      haveController = true;
    } else if (key == "malicious_install") {
      MaliciousInstall mi;
      for (const auto& [k, v] : value.items()) {
        if (k == "mode") mi.mode = parseTamperMode(fieldAs<std::string>(v, "faults[].malicious_install.mode"));
        else if (k == "count") mi.count = fieldAs<int>(v, "faults[].malicious_install.count");
        else invalid("faults[].malicious_install." + k, "unknown field");
      }
      out.profile.maliciousInstall = mi;
    } else if (key == "bad_mouth") {
      for (const auto& t : value) out.profile.badMouthTargets.insert(parseControllerId(t));
    } else {
      invalid("faults[]." + key, "unknown field");
    }
  }
  if (!haveController) invalid("faults[].controller", "is required");
  return out;
}

std::string policyAddress(int index) {
  return "10.0." + std::to_string(index / 250) + "." + std::to_string(index % 250 + 1);
}

Scenario uniformScenario(std::string name, int controllers, int switches, int tamperers, std::uint64_t seed) {
  Scenario s;
  s.name = std::move(name);
  s.controllers = controllers;
  s.switchesPerController = std::max(1, switches / controllers);
  if (switches != controllers * s.switchesPerController) s.totalSwitches = switches;
  s.assignments = defaultAssignments(controllers);
  s.seed = seed;

  std::vector<ControllerId> ids = s.controllerIds();
  std::vector<ControllerId> picked;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x7a3bu};
  std::mt19937_64 rng(seq);
  std::sample(ids.begin(), ids.end(), std::back_inserter(picked), tamperers, rng);
  for (auto c : picked) {
    FaultBinding f{c, {}};
    f.profile.maliciousInstall = MaliciousInstall{TamperMode::FlipAction, 1};
    s.faults.push_back(f);
  }
  return s;
}

Scenario badMouthScenario(std::string name, int controllers, int switches,
                          const std::vector<std::pair<int, std::vector<int>>>& liars, std::uint64_t seed) {
  Scenario s = uniformScenario(std::move(name), controllers, switches, 0, seed);
  for (const auto& [liar, targets] : liars) {
    FaultBinding f{ControllerId{static_cast<std::uint32_t>(liar)}, {}};
    for (int t : targets) f.profile.badMouthTargets.insert(ControllerId{static_cast<std::uint32_t>(t)});
    s.faults.push_back(f);
  }
  return s;
}

}  // namespace

std::vector<ControllerId> Scenario::controllerIds() const {
  std::vector<ControllerId> out;
  for (int i = 1; i <= controllers; ++i) out.push_back(ControllerId{static_cast<std::uint32_t>(i)});
  return out;
}

std::vector<std::pair<SwitchId, ControllerId>> Scenario::switchLayout() const {
  std::vector<std::pair<SwitchId, ControllerId>> out;
  const int m = switchCount();
  const int base = m / controllers;
  const int extra = m % controllers;
  std::uint32_t next = 1;
  for (int c = 1; c <= controllers; ++c) {
    const int owned = base + (c <= extra ? 1 : 0);
    for (int k = 0; k < owned; ++k) {
      out.emplace_back(SwitchId{next++}, ControllerId{static_cast<std::uint32_t>(c)});
    }
  }
  return out;
}

FaultProfile Scenario::faultsFor(ControllerId controller) const {
  for (const auto& f : faults) {
    if (f.controller == controller) return f.profile;
  }
  return {};
}

std::set<ControllerId> Scenario::tamperers() const {
  std::set<ControllerId> out;
  for (const auto& f : faults) {
    if (f.profile.isTamperer()) out.insert(f.controller);
  }
  return out;
}

void Scenario::normalize() {
  if (controllers < 1) invalid("controllers", "must be >= 1");
  if (switchesPerController < 1) invalid("switches_per_controller", "must be >= 1");
  if (totalSwitches && *totalSwitches < 1) invalid("switches", "must be >= 1");
  if (rounds < 1) invalid("rounds", "must be >= 1");
  trustParams.validate();

  const auto ids = controllerIds();
  auto known = [&](ControllerId c) { return c.index >= 1 && c.index <= static_cast<std::uint32_t>(controllers); };

  for (const auto& [c, policies] : assignments) {
    if (!known(c)) invalid("assignments", "unknown controller " + c.str());
    for (const auto& p : policies) p.validate();
  }
  for (auto c : ids) assignments[c];

  std::set<ControllerId> seen;
  for (const auto& f : faults) {
    if (!known(f.controller)) invalid("faults", "unknown controller " + f.controller.str());
    if (!seen.insert(f.controller).second) invalid("faults", "duplicate entry for " + f.controller.str());
    for (auto t : f.profile.badMouthTargets) {
      if (!known(t)) invalid("faults.bad_mouth", "unknown controller " + t.str());
      if (t == f.controller) invalid("faults.bad_mouth", f.controller.str() + " targets itself");
    }
    if (f.profile.maliciousInstall) {
      const int count = f.profile.maliciousInstall->count;
      const auto available = static_cast<int>(assignments[f.controller].size());
      if (count < 1) invalid("faults.malicious_install.count", "must be >= 1");
      if (count > available) {
        invalid("faults.malicious_install.count",
                f.controller.str() + " has only " + std::to_string(available) + " assigned policies");
      }
    }
  }
}

json scenarioToJson(const Scenario& s) {
  json faults = json::array();
  for (const auto& f : s.faults) faults.push_back(faultToJson(f));
  json j{{"name", s.name},
         {"controllers", s.controllers},
         {"switches_per_controller", s.switchesPerController},
         {"assignments", assignmentsToJson(s.assignments)},
         {"faults", std::move(faults)},
         {"trust_params", s.trustParams},
         {"rounds", s.rounds},
         {"seed", s.seed}};
  if (s.totalSwitches) j["switches"] = *s.totalSwitches;
  return j;
}

Scenario scenarioFromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "scenario must be a JSON object");
  Scenario s;
  bool haveControllers = false;
  bool haveSpc = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") s.name = fieldAs<std::string>(value, "name");
    else if (key == "controllers") { s.controllers = fieldAs<int>(value, "controllers"); haveControllers = true; }
    else if (key == "switches_per_controller") {
      s.switchesPerController = fieldAs<int>(value, "switches_per_controller");
      haveSpc = true;
    }
    else if (key == "switches") s.totalSwitches = fieldAs<int>(value, "switches");
    else if (key == "assignments") s.assignments = assignmentsFromJson(value);
    else if (key == "faults") {
      if (!value.is_array()) throw Error(ErrorCode::ValidationError, "faults: must be a list");
      for (const auto& f : value) s.faults.push_back(faultFromJson(f));
    }
    else if (key == "trust_params") s.trustParams = value.get<TrustParams>();
    else if (key == "rounds") s.rounds = fieldAs<int>(value, "rounds");
    else if (key == "seed") s.seed = fieldAs<std::uint64_t>(value, "seed");
    else invalid(key, "unknown key");
  }
  if (!haveControllers) invalid("controllers", "is required");
  if (!haveSpc && !s.totalSwitches) invalid("switches_per_controller", "is required");
  if (!haveSpc) s.switchesPerController = std::max(1, *s.totalSwitches / std::max(1, s.controllers));
  s.normalize();
  return s;
}

Scenario loadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return scenarioFromJson(j);
}

AssignmentMap defaultAssignments(int controllers) {
  AssignmentMap out;
  for (int i = 1; i <= controllers; ++i) {
    const ControllerId c{static_cast<std::uint32_t>(i)};
    out[c].push_back(Policy{"policy-" + c.str(), {{"srcIP", policyAddress(i)}}, Action::Drop});
  }
  return out;
}

const std::vector<std::string>& builtinNames() {
  static const std::vector<std::string> names{"t1c1", "t1c2", "t1c3", "t2c1", "t2c2", "t2c3",
                                              "t2c4", "t3c1", "t3c2", "t3c3", "t3c4", "msg250"};
  return names;
}

Scenario builtinScenario(std::string_view name, std::uint64_t seed) {
  Scenario s;
  const std::string n(name);
  // Detection configurations: controllers, switches, malicious installers.
  if (n == "t1c1") s = uniformScenario(n, 5, 10, 2, seed);
  else if (n == "t1c2") s = uniformScenario(n, 10, 20, 4, seed);
  else if (n == "t1c3") s = uniformScenario(n, 15, 30, 6, seed);
  // Message-scaling configurations.
  else if (n == "t2c1") s = uniformScenario(n, 1, 3, 0, seed);
  else if (n == "t2c2") s = uniformScenario(n, 3, 6, 1, seed);
  else if (n == "t2c3") s = uniformScenario(n, 6, 12, 2, seed);
  else if (n == "t2c4") s = uniformScenario(n, 9, 27, 3, seed);
  // Bad-mouthing configurations.
  else if (n == "t3c1") s = badMouthScenario(n, 3, 6, {{1, {2}}}, seed);
  else if (n == "t3c2") s = badMouthScenario(n, 3, 6, {{1, {3}}, {2, {3}}}, seed);
  else if (n == "t3c3") s = badMouthScenario(n, 6, 12, {{1, {2, 3}}}, seed);
  else if (n == "t3c4") s = badMouthScenario(n, 6, 12, {{1, {3, 4}}, {2, {3, 4}}}, seed);
  // Largest message configuration as described in the evaluation text.
  else if (n == "msg250") s = uniformScenario(n, 9, 24, 3, seed);
  else throw Error(ErrorCode::UnknownScenario, "'" + n + "'");
  s.normalize();
  return s;
}

}  // namespace trustnet
