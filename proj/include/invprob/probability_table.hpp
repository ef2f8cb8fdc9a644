#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invprob/action.hpp"
#include "invprob/error.hpp"
#include "invprob/rational.hpp"

namespace invprob {

struct Outcome {
  std::string label;
  Rational probability;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Exact probabilities over a finite, ordered set of uniquely labelled outcomes.
/// Construction enforces non-negativity and an exact sum of 1.
class ProbabilityTable {
 public:
  explicit ProbabilityTable(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw Error(ErrorKind::Structural, "probability table is empty");
    Rational total = 0;
    std::set<std::string_view> seen;
    for (const auto& o : outcomes_) {
      if (o.probability < 0) throw Error(ErrorKind::Structural, "negative probability for '" + o.label + "'");
      if (!seen.insert(o.label).second) throw Error(ErrorKind::Structural, "duplicate outcome '" + o.label + "'");
      total += o.probability;
    }
    if (total != 1) throw Error(ErrorKind::Structural, "probabilities sum to " + to_string(total) + ", not 1");
  }

  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }

  std::optional<Rational> find(std::string_view label) const {
    for (const auto& o : outcomes_)
      if (o.label == label) return o.probability;
    return std::nullopt;
  }

  Rational probability(std::string_view label) const {
    if (auto p = find(label)) return *p;
    throw Error(ErrorKind::Structural, "no outcome '" + std::string(label) + "'");
  }

  friend bool operator==(const ProbabilityTable&, const ProbabilityTable&) = default;

 private:
  std::vector<Outcome> outcomes_;
};

/// Counting measure on the states of a transitive action: every state gets 1/|states|.
inline ProbabilityTable uniform_over_action(const GroupAction& action) {
  if (!action.is_transitive())
    throw Error(ErrorKind::OrbitAmbiguity, "action of '" + action.group().label() +
                                               "' has more than one orbit; the data do not single out one");
  const Rational each(1, static_cast<std::int64_t>(action.states().size()));
  std::vector<Outcome> outcomes;
  for (const auto& s : action.states()) outcomes.push_back({s, each});
  return ProbabilityTable(std::move(outcomes));
}

using Projection = std::function<std::optional<std::string>(std::string_view)>;

/// Coarse-grains outcomes; coarse labels appear in order of first occurrence.
inline ProbabilityTable marginalize(const ProbabilityTable& table, const Projection& projection) {
  std::vector<Outcome> coarse;
  for (const auto& o : table.outcomes()) {
    auto target = projection(o.label);
    if (!target) throw Error(ErrorKind::MissingProjection, "no coarse label for '" + o.label + "'");
    auto it = std::find_if(coarse.begin(), coarse.end(), [&](const Outcome& c) { return c.label == *target; });
    if (it == coarse.end())
      coarse.push_back({*target, o.probability});
    else
      it->probability += o.probability;
  }
  return ProbabilityTable(std::move(coarse));
}

inline ProbabilityTable marginalize(const ProbabilityTable& table, const std::map<std::string, std::string>& projection) {
  return marginalize(table, [&](std::string_view label) -> std::optional<std::string> {
    auto it = projection.find(std::string(label));
    if (it == projection.end()) return std::nullopt;
    return it->second;
  });
}

inline ProbabilityTable condition(const ProbabilityTable& table, const std::function<bool(std::string_view)>& predicate) {
  std::vector<Outcome> kept;
  Rational mass = 0;
  for (const auto& o : table.outcomes())
    if (predicate(o.label)) {
      kept.push_back(o);
      mass += o.probability;
    }
  if (kept.empty() || mass == 0) throw Error(ErrorKind::ConditioningOnNull, "no outcome with positive probability satisfies the condition");
  for (auto& o : kept) o.probability /= mass;
  return ProbabilityTable(std::move(kept));
}

/// Splits a joint label into (coarse, fine). Returns nullopt when the label has no such structure.
using LabelSplitter = std::function<std::optional<std::pair<std::string, std::string>>(std::string_view)>;

/// Default joint-label structure "coarse,fine", split at the first comma.
inline std::optional<std::pair<std::string, std::string>> split_at_comma(std::string_view label) {
  auto comma = label.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  return std::pair{std::string(label.substr(0, comma)), std::string(label.substr(comma + 1))};
}

/// Largest |joint - marginal * conditional| over every cell that either side assigns, in exact
/// arithmetic. Zero means the joint factorizes exactly.
inline Rational bayes_factorization_check(const ProbabilityTable& joint, const ProbabilityTable& marginal,
                                          const std::map<std::string, ProbabilityTable>& conditionals,
                                          const LabelSplitter& split = split_at_comma) {
  Rational worst = 0;
  std::set<std::pair<std::string, std::string>> covered;
  for (const auto& o : joint.outcomes()) {
    auto parts = split(o.label);
    if (!parts) throw Error(ErrorKind::Structural, "joint label '" + o.label + "' has no (coarse, fine) structure");
    auto cond = conditionals.find(parts->first);
    auto m = marginal.find(parts->first);
    if (!m || cond == conditionals.end())
      throw Error(ErrorKind::Structural, "coarse label '" + parts->first + "' missing from marginal or conditionals");
    const Rational product = *m * cond->second.find(parts->second).value_or(0);
    worst = std::max(worst, boost::abs(o.probability - product));
    covered.insert(*parts);
  }
  for (const auto& [coarse, table] : conditionals) {
    const Rational m = marginal.find(coarse).value_or(0);
    for (const auto& o : table.outcomes())
      if (!covered.count({coarse, o.label})) worst = std::max(worst, boost::abs(m * o.probability));
  }
  for (const auto& o : marginal.outcomes())
    if (!conditionals.count(o.label) && o.probability != 0)
      throw Error(ErrorKind::Structural, "no conditional table for coarse label '" + o.label + "'");
  return worst;
}

/// Value of `key` in a "k1=v1,k2=v2" label, if present.
inline std::optional<std::string> label_field(std::string_view label, std::string_view key) {
  auto begin = label.begin();
  while (begin != label.end()) {
    const auto end = std::find(begin, label.end(), ',');
    const auto eq = std::find(begin, end, '=');
    if (eq != end && std::string_view(begin, eq) == key) return std::string(eq + 1, end);
    if (end == label.end()) break;
    begin = end + 1;
  }
  return std::nullopt;
}

// Text form: one "label p/q" line per outcome.

inline std::string to_text(const ProbabilityTable& table) {
  std::ostringstream out;
  for (const auto& o : table.outcomes()) out << o.label << " " << to_string(o.probability) << "\n";
  return out.str();
}

inline ProbabilityTable parse_table_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Outcome> outcomes;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto space = line.rfind(' ');
    if (space == std::string::npos || space == 0)
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected '<label> <p/q>'");
    outcomes.push_back({line.substr(0, space), parse_rational(line.substr(space + 1))});
  }
  return ProbabilityTable(std::move(outcomes));
}

}  // namespace invprob
