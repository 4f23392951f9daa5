#ifndef DLC_IO_HPP
#define DLC_IO_HPP

#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dlc/decision_list.hpp"

// Canonical on-disk form:
//   { "n": <int>, "rules": [ { "pos": [<int>...], "neg": [<int>...], "value": <string> }, ... ] }

namespace dlc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t rule)
      : std::runtime_error(message), rule_(rule) {}
  /// 1-based rule position, or 0 for document-level problems.
  std::size_t rule() const noexcept { return rule_; }

 private:
  std::size_t rule_;
};

inline nlohmann::json to_json(const Term& term) {
  return {{"pos", term.pos()}, {"neg", term.neg()}};
}

inline nlohmann::json to_json(const DecisionList& list) {
  nlohmann::json rules = nlohmann::json::array();
  for (const Rule& r : list.rules()) {
    nlohmann::json j = to_json(r.term);
    j["value"] = r.value;
    rules.push_back(std::move(j));
  }
  return {{"n", list.n()}, {"rules", std::move(rules)}};
}

inline std::string serialize(const DecisionList& list, int indent = 2) {
  return to_json(list).dump(indent);
}

namespace detail {

inline std::string rule_prefix(std::size_t rule) { return "rule " + std::to_string(rule) + ": "; }

inline std::vector<VarIndex> read_indices(const nlohmann::json& rule, const char* key,
                                          std::size_t position, unsigned n) {
  std::vector<VarIndex> out;
  if (!rule.contains(key)) return out;
  const auto& arr = rule.at(key);
  if (!arr.is_array()) {
    throw ParseError("malformed: " + rule_prefix(position) + "\"" + key + "\" must be an array", position);
  }
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError("malformed: " + rule_prefix(position) + "\"" + key + "\" entries must be integers",
                       position);
    }
    const auto idx = v.get<std::int64_t>();
    if (idx < 1 || idx > static_cast<std::int64_t>(n)) {
      throw ParseError("index out of range: " + rule_prefix(position) + "variable " + std::to_string(idx) +
                           " not in [1, " + std::to_string(n) + "]",
                       position);
    }
    out.push_back(static_cast<VarIndex>(idx));
  }
  return out;
}

}  // namespace detail

/// Parses and validates a list from a JSON document. Each failure class
/// (malformed, missing trailing True rule, duplicate variable, index out of
/// range) has its own message prefix and names the offending rule.
inline DecisionList decision_list_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("malformed: document must be a JSON object", 0);
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) {
    throw ParseError("malformed: \"n\" must be an integer", 0);
  }
  const auto n_raw = doc.at("n").get<std::int64_t>();
  if (n_raw < 0 || n_raw > static_cast<std::int64_t>(kMaxVars)) {
    throw ParseError("malformed: \"n\" must lie in [0, 64]", 0);
  }
  const auto n = static_cast<unsigned>(n_raw);
  if (!doc.contains("rules") || !doc.at("rules").is_array()) {
    throw ParseError("malformed: \"rules\" must be an array", 0);
  }
  const auto& raw_rules = doc.at("rules");
  if (raw_rules.empty()) throw ParseError("missing trailing True rule: list has no rules", 0);

  std::vector<Rule> rules;
  rules.reserve(raw_rules.size());
  std::size_t position = 0;
  for (const auto& raw : raw_rules) {
    ++position;
    if (!raw.is_object()) throw ParseError("malformed: " + detail::rule_prefix(position) + "must be an object", position);
    if (!raw.contains("value") || !raw.at("value").is_string()) {
      throw ParseError("malformed: " + detail::rule_prefix(position) + "\"value\" must be a string", position);
    }
    auto pos = detail::read_indices(raw, "pos", position, n);
    auto neg = detail::read_indices(raw, "neg", position, n);
    try {
      rules.push_back({Term(std::move(pos), std::move(neg)), raw.at("value").get<std::string>()});
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(e.what()) + " in rule " + std::to_string(position), position);
    }
  }
  if (!rules.back().term.empty()) {
    throw ParseError("missing trailing True rule: " + detail::rule_prefix(rules.size()) +
                         "last rule must have empty pos and neg",
                     rules.size());
  }
  return DecisionList(n, std::move(rules));
}

inline DecisionList parse_decision_list(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed: ") + e.what(), 0);
  }
  return decision_list_from_json(doc);
}

inline DecisionList read_decision_list(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_decision_list(buffer.str());
}

}  // namespace dlc

#endif  // DLC_IO_HPP
