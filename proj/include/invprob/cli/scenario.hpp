#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "invprob/error.hpp"
#include "invprob/haar.hpp"
#include "invprob/quantum.hpp"

namespace invprob::cli {

using nlohmann::json;

struct CoinQuery {};

enum class DieQuery { Joint, MarginalUp, ConditionalNorth };

struct DieQuerySpec {
  DieQuery query = DieQuery::Joint;
  std::optional<int> north;  // required for ConditionalNorth
};

struct IntervalQuery {
  FamilyKind family = FamilyKind::Translation;
  double lower = 0;
  double upper = 1;
  std::optional<double> at;
  std::optional<double> quantile;
};

struct VonMisesQuery {
  double ratio_lower = 1;
  double ratio_upper = 2;
};

/// Either a named basis state ("up", "down") or explicit amplitudes [a_re, a_im, b_re, b_im].
struct PreparedState {
  std::string name = "up";
  std::array<double, 4> amplitudes{1, 0, 0, 0};

  SpinRay ray() const {
    return SpinRay::normalized({amplitudes[0], amplitudes[1]}, {amplitudes[2], amplitudes[3]});
  }
};

struct SpinQuery {
  double theta = 0;
  PreparedState state;
};

struct SpinChainQuery {
  std::vector<double> thetas;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  PreparedState state;
};

using Scenario = std::variant<CoinQuery, DieQuerySpec, IntervalQuery, VonMisesQuery, SpinQuery, SpinChainQuery>;

inline std::string_view kind_name(const Scenario& s) {
  static constexpr std::array<std::string_view, 6> names{"coin", "die", "interval", "von_mises", "spin", "spin_chain"};
  return names[s.index()];
}

inline std::string_view to_string(DieQuery q) {
  switch (q) {
    case DieQuery::Joint: return "joint";
    case DieQuery::MarginalUp: return "marginal_up";
    case DieQuery::ConditionalNorth: return "conditional_north";
  }
  return "joint";
}

namespace detail {

[[noreturn]] inline void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::Validation, "field '" + field + "': " + why);
}

inline void reject_unknown_keys(const json& doc, std::set<std::string> allowed) {
  allowed.insert("kind");
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key)) invalid(key, "unknown key for kind '" + doc["kind"].get<std::string>() + "'");
}

inline double finite_number(const json& doc, const std::string& key) {
  if (!doc.contains(key)) invalid(key, "required");
  const auto& v = doc[key];
  if (!v.is_number()) invalid(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(key, "must be finite");
  return x;
}

inline std::optional<double> optional_number(const json& doc, const std::string& key) {
  if (!doc.contains(key)) return std::nullopt;
  return finite_number(doc, key);
}

inline std::uint64_t unsigned_integer(const json& doc, const std::string& key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc[key];
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    invalid(key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::string string_field(const json& doc, const std::string& key) {
  if (!doc.contains(key)) invalid(key, "required");
  if (!doc[key].is_string()) invalid(key, "expected a string");
  return doc[key].get<std::string>();
}

inline PreparedState parse_state(const json& doc) {
  PreparedState state;
  if (!doc.contains("state")) return state;
  const auto& v = doc["state"];
  if (v.is_string()) {
    state.name = v.get<std::string>();
    if (state.name == "up")
      state.amplitudes = {1, 0, 0, 0};
    else if (state.name == "down")
      state.amplitudes = {0, 0, 1, 0};
    else
      invalid("state", "expected \"up\", \"down\" or [a_re, a_im, b_re, b_im]");
    return state;
  }
  if (!v.is_array() || v.size() != 4) invalid("state", "expected \"up\", \"down\" or [a_re, a_im, b_re, b_im]");
  state.name.clear();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) invalid("state", "amplitudes must be finite numbers");
    state.amplitudes[i] = v[i].get<double>();
  }
  if (state.amplitudes == std::array<double, 4>{0, 0, 0, 0}) invalid("state", "amplitudes must not all be zero");
  return state;
}

inline json state_json(const PreparedState& s) {
  if (!s.name.empty()) return s.name;
  return json::array({s.amplitudes[0], s.amplitudes[1], s.amplitudes[2], s.amplitudes[3]});
}

}  // namespace detail

inline Scenario parse_scenario(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "scenario must be a JSON object");
  const std::string kind = string_field(doc, "kind");

  if (kind == "coin") {
    reject_unknown_keys(doc, {});
    return CoinQuery{};
  }
  if (kind == "die") {
    reject_unknown_keys(doc, {"query", "north"});
    DieQuerySpec s;
    const std::string query = doc.contains("query") ? string_field(doc, "query") : "joint";
    if (query == "joint")
      s.query = DieQuery::Joint;
    else if (query == "marginal_up")
      s.query = DieQuery::MarginalUp;
    else if (query == "conditional_north")
      s.query = DieQuery::ConditionalNorth;
    else
      invalid("query", "expected joint, marginal_up or conditional_north");
    if (doc.contains("north")) {
      if (!doc["north"].is_number_integer()) invalid("north", "expected an integer face value");
      const int north = doc["north"].get<int>();
      if (north < 1 || north > 6) invalid("north", "face value must be in 1..6");
      s.north = north;
    }
    if (s.query == DieQuery::ConditionalNorth && !s.north) invalid("north", "required for conditional_north");
    if (s.query != DieQuery::ConditionalNorth && s.north) invalid("north", "only meaningful for conditional_north");
    return s;
  }
  if (kind == "interval") {
    reject_unknown_keys(doc, {"family", "lower", "upper", "at", "quantile"});
    IntervalQuery s;
    const std::string family = string_field(doc, "family");
    if (family == "translation")
      s.family = FamilyKind::Translation;
    else if (family == "scale")
      s.family = FamilyKind::Scale;
    else
      invalid("family", "expected translation or scale");
    s.lower = finite_number(doc, "lower");
    s.upper = finite_number(doc, "upper");
    if (!(s.lower < s.upper)) invalid("upper", "must exceed lower");
    if (s.family == FamilyKind::Scale && !(s.lower > 0)) invalid("lower", "scale family needs a positive lower bound");
    s.at = optional_number(doc, "at");
    s.quantile = optional_number(doc, "quantile");
    if (s.quantile && !(*s.quantile >= 0 && *s.quantile <= 1)) invalid("quantile", "must lie in [0, 1]");
    return s;
  }
  if (kind == "von_mises") {
    reject_unknown_keys(doc, {"ratio_lower", "ratio_upper"});
    VonMisesQuery s;
    if (doc.contains("ratio_lower")) s.ratio_lower = finite_number(doc, "ratio_lower");
    if (doc.contains("ratio_upper")) s.ratio_upper = finite_number(doc, "ratio_upper");
    if (!(s.ratio_lower > 0)) invalid("ratio_lower", "must be positive");
    if (!(s.ratio_lower < s.ratio_upper)) invalid("ratio_upper", "must exceed ratio_lower");
    return s;
  }
  if (kind == "spin") {
    reject_unknown_keys(doc, {"theta", "state"});
    return SpinQuery{finite_number(doc, "theta"), parse_state(doc)};
  }
  if (kind == "spin_chain") {
    reject_unknown_keys(doc, {"thetas", "seed", "trials", "state"});
    SpinChainQuery s;
    if (!doc.contains("thetas")) invalid("thetas", "required");
    if (!doc["thetas"].is_array() || doc["thetas"].empty()) invalid("thetas", "expected a nonempty array of angles");
    for (const auto& t : doc["thetas"]) {
      if (!t.is_number() || !std::isfinite(t.get<double>())) invalid("thetas", "angles must be finite numbers");
      s.thetas.push_back(t.get<double>());
    }
    s.seed = unsigned_integer(doc, "seed", 0);
    s.trials = unsigned_integer(doc, "trials", 1);
    if (s.trials == 0) invalid("trials", "must be at least 1");
    s.state = parse_state(doc);
    return s;
  }
  invalid("kind", "unknown kind '" + kind + "'");
}

inline Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return parse_scenario(doc);
}

inline Scenario parse_scenario(const char* text) { return parse_scenario(std::string(text)); }

/// Canonical document: every field written explicitly, defaults included.
inline json to_json(const Scenario& scenario) {
  json doc{{"kind", kind_name(scenario)}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DieQuerySpec>) {
          doc["query"] = to_string(s.query);
          if (s.north) doc["north"] = *s.north;
        } else if constexpr (std::is_same_v<T, IntervalQuery>) {
          doc["family"] = to_string(s.family);
          doc["lower"] = s.lower;
          doc["upper"] = s.upper;
          if (s.at) doc["at"] = *s.at;
          if (s.quantile) doc["quantile"] = *s.quantile;
        } else if constexpr (std::is_same_v<T, VonMisesQuery>) {
          doc["ratio_lower"] = s.ratio_lower;
          doc["ratio_upper"] = s.ratio_upper;
        } else if constexpr (std::is_same_v<T, SpinQuery>) {
          doc["theta"] = s.theta;
          doc["state"] = detail::state_json(s.state);
        } else if constexpr (std::is_same_v<T, SpinChainQuery>) {
          doc["thetas"] = s.thetas;
          doc["seed"] = s.seed;
          doc["trials"] = s.trials;
          doc["state"] = detail::state_json(s.state);
        }
      },
      scenario);
  return doc;
}

}  // namespace invprob::cli
