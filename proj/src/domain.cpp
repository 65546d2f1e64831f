#include "trustnet/domain.hpp"

#include <algorithm>
#include <charconv>

#include "trustnet/error.hpp"

namespace trustnet {

namespace {

std::uint32_t parsePrefixedIndex(const json& j, char prefix, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint32_t>();
  if (j.is_number_integer()) {
    auto value = j.get<std::int64_t>();
    if (value < 0) throw Error(ErrorCode::ParseError, std::string(what) + " index must be non-negative");
    return static_cast<std::uint32_t>(value);
  }
  if (!j.is_string()) throw Error(ErrorCode::ParseError, std::string(what) + " must be a string or integer");
  const auto& text = j.get_ref<const std::string&>();
  if (text.size() < 2 || text.front() != prefix) {
    throw Error(ErrorCode::ParseError, std::string("malformed ") + what + " '" + text + "'");
  }
  std::uint32_t index = 0;
  const char* first = text.data() + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::ParseError, std::string("malformed ") + what + " '" + text + "'");
  }
  return index;
}

}  // namespace

std::string_view toString(Action action) {
  return action == Action::Drop ? "drop" : "allow";
}

Action parseAction(std::string_view text) {
  if (text == "drop") return Action::Drop;
  if (text == "allow") return Action::Allow;
  throw Error(ErrorCode::ParseError, "unknown action '" + std::string(text) + "'");
}

void Policy::validate() const {
  if (id.empty()) throw Error(ErrorCode::ValidationError, "policy id must not be empty");
  if (match.empty()) {
    throw Error(ErrorCode::ValidationError, "policy '" + id + "' has an empty match map");
  }
}

ComparisonOutcome comparePolicy(const Policy& expected, std::span<const FlowEntry> flowTable) {
  const bool found = std::any_of(flowTable.begin(), flowTable.end(),
                                 [&](const FlowEntry& e) { return e.policy == expected; });
  return found ? ComparisonOutcome::Match : ComparisonOutcome::Mismatch;
}

ControllerId parseControllerId(const json& j) {
  return ControllerId{parsePrefixedIndex(j, 'C', "controller id")};
}

SwitchId parseSwitchId(const json& j) { return SwitchId{parsePrefixedIndex(j, 'S', "switch id")}; }

void to_json(json& j, const ControllerId& id) { j = id.str(); }
void from_json(const json& j, ControllerId& id) { id = parseControllerId(j); }
void to_json(json& j, const SwitchId& id) { j = id.str(); }
void from_json(const json& j, SwitchId& id) { id = parseSwitchId(j); }

void to_json(json& j, const Policy& policy) {
  j = json{{"id", policy.id}, {"match", policy.match}, {"action", toString(policy.action)}};
}

void from_json(const json& j, Policy& policy) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "policy must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "id" && key != "match" && key != "action") {
      throw Error(ErrorCode::ValidationError, "unknown policy field '" + key + "'");
    }
  }
  try {
    policy.id = j.at("id").get<std::string>();
    policy.match = j.at("match").get<std::map<std::string, std::string>>();
    policy.action = parseAction(j.at("action").get<std::string>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("policy: ") + e.what());
  }
  policy.validate();
}

void to_json(json& j, const FlowEntry& entry) {
  j = json{{"policy", entry.policy}, {"installed_by", entry.installedBy}};
}

void from_json(const json& j, FlowEntry& entry) {
  entry.policy = j.at("policy").get<Policy>();
  entry.installedBy = j.at("installed_by").get<ControllerId>();
}

}  // namespace trustnet
