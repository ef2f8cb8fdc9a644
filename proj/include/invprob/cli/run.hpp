#pragma once

#include <random>
#include <string>
#include <vector>

#include "invprob/action.hpp"
#include "invprob/cli/report.hpp"
#include "invprob/cli/scenario.hpp"
#include "invprob/group.hpp"
#include "invprob/haar.hpp"
#include "invprob/probability_table.hpp"
#include "invprob/quantum.hpp"

namespace invprob::cli {

namespace detail {

inline void add_table_rows(Report& r, const ProbabilityTable& table) {
  r.columns = {"outcome", "probability"};
  for (const auto& o : table.outcomes()) r.rows.push_back({o.label, o.probability});
}

inline void add_group(Report& r, const FiniteGroup& g) {
  r.summary.emplace_back("group", g.label());
  r.summary.emplace_back("group_order", static_cast<std::int64_t>(g.order()));
}

inline Projection field_projection(std::string key) {
  return [key](std::string_view label) -> std::optional<std::string> {
    auto v = label_field(label, key);
    if (!v) return std::nullopt;
    return key + "=" + *v;
  };
}

/// The die joint table, factorized as P(north) * P(up | north).
struct DieFactorization {
  ProbabilityTable joint;
  ProbabilityTable marginal_north;
  std::map<std::string, ProbabilityTable> up_given_north;
};

inline DieFactorization factor_die_by_north() {
  ProbabilityTable joint = uniform_over_action(die_action());
  ProbabilityTable marginal = marginalize(joint, field_projection("north"));
  std::map<std::string, ProbabilityTable> conditionals;
  for (const auto& o : marginal.outcomes()) {
    const std::string north = o.label;
    auto given = condition(joint, [&](std::string_view l) { return "north=" + label_field(l, "north").value_or("") == north; });
    conditionals.emplace(north, marginalize(given, field_projection("up")));
  }
  return {std::move(joint), std::move(marginal), std::move(conditionals)};
}

inline std::optional<std::pair<std::string, std::string>> north_then_up(std::string_view label) {
  auto up = label_field(label, "up"), north = label_field(label, "north");
  if (!up || !north) return std::nullopt;
  return std::pair{"north=" + *north, "up=" + *up};
}

inline void add_density(Report& r, const NormalizedDensity& d, std::size_t grid_points = 21) {
  r.summary.emplace_back("measure", std::string("group-measure density"));
  r.summary.emplace_back("family", std::string(to_string(d.family().kind())));
  r.summary.emplace_back("closed_form", std::string(d.closed_form()));
  r.summary.emplace_back("support_lower", d.support().lower);
  r.summary.emplace_back("support_upper", d.support().upper);
  r.summary.emplace_back("normalizer", d.normalizer());
  r.columns = {"x", "density", "cdf"};
  const auto& s = d.support();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = s.lower + (s.upper - s.lower) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    r.rows.push_back({x, density_at(d, x), cdf(d, x)});
  }
}

inline Report run_die(const DieQuerySpec& s) {
  Report r{"die"};
  const DieFactorization f = factor_die_by_north();
  switch (s.query) {
    case DieQuery::Joint:
      r.summary.emplace_back("query", std::string("joint"));
      add_group(r, make_octahedral());
      add_table_rows(r, f.joint);
      break;
    case DieQuery::MarginalUp:
      r.summary.emplace_back("query", std::string("marginal_up"));
      add_group(r, make_dihedral(3));
      add_table_rows(r, marginalize(f.joint, field_projection("up")));
      break;
    case DieQuery::ConditionalNorth: {
      const std::string key = "north=" + std::to_string(*s.north);
      r.summary.emplace_back("query", std::string("conditional_north"));
      r.summary.emplace_back("north", static_cast<std::int64_t>(*s.north));
      add_group(r, make_cyclic(4));
      r.summary.emplace_back("bayes_residual",
                             bayes_factorization_check(f.joint, f.marginal_north, f.up_given_north, north_then_up));
      add_table_rows(r, f.up_given_north.at(key));
      break;
    }
  }
  return r;
}

inline Report run_interval(const IntervalQuery& s) {
  const OneParamFamily family = s.family == FamilyKind::Scale ? OneParamFamily::scale() : OneParamFamily::translation();
  const NormalizedDensity d = normalize(family, {s.lower, s.upper});
  Report r{"interval"};
  r.summary.emplace_back("conventional_name",
                         std::string(s.family == FamilyKind::Scale ? "Jeffreys prior" : "Laplace prior"));
  r.summary.emplace_back("density_form", std::string(s.family == FamilyKind::Scale ? "1/(x*ln(upper/lower))"
                                                                                    : "1/(upper-lower)"));
  add_density(r, d);
  if (s.at) {
    r.summary.emplace_back("at", *s.at);
    r.summary.emplace_back("density_at", density_at(d, *s.at));
    r.summary.emplace_back("cdf_at", cdf(d, *s.at));
  }
  if (s.quantile) {
    r.summary.emplace_back("quantile_level", *s.quantile);
    r.summary.emplace_back("quantile", quantile(d, *s.quantile));
  }
  return r;
}

inline Report run_von_mises(const VonMisesQuery& s) {
  const NormalizedDensity water = von_mises_reduce({s.ratio_lower, s.ratio_upper});
  const NormalizedDensity wine = pushforward_affine(water, -1, 1);
  const double median = quantile(water, 0.5);
  Report r{"von_mises"};
  r.summary.emplace_back("variable", std::string("water fraction f_e"));
  add_density(r, water);
  r.summary.emplace_back("density", density_at(water, median));
  r.summary.emplace_back("median", median);
  r.summary.emplace_back("wine_support_lower", wine.support().lower);
  r.summary.emplace_back("wine_support_upper", wine.support().upper);
  r.summary.emplace_back("wine_density", density_at(wine, 0.5 * (wine.support().lower + wine.support().upper)));
  r.summary.emplace_back("p_wine_above_1_minus_median", 1 - cdf(wine, 1 - median));
  return r;
}

inline std::vector<Cell> state_cells(const SpinRay& ray) {
  return {ray.up().real(), ray.up().imag(), ray.down().real(), ray.down().imag()};
}

inline Report run_spin(const SpinQuery& s) {
  const SpinRay ray = s.state.ray();
  const SpinObservable obs = observable(s.theta);
  const auto [amp_up, amp_down] = amplitudes(ray, obs);
  const auto eig = eigensystem(obs);
  Report r{"spin"};
  r.summary.emplace_back("theta", s.theta);
  r.summary.emplace_back("unit", std::string("hbar/2"));
  r.columns = {"eigenvalue", "probability", "amplitude_re", "amplitude_im", "post_up_re", "post_up_im",
               "post_down_re", "post_down_im"};
  for (const auto& [pair, amp] : {std::pair{eig.up, amp_up}, std::pair{eig.down, amp_down}}) {
    std::vector<Cell> row{static_cast<std::int64_t>(eigenvalue(pair.value)), std::norm(amp), amp.real(), amp.imag()};
    for (auto& c : state_cells(pair.vector)) row.push_back(std::move(c));
    r.rows.push_back(std::move(row));
  }
  return r;
}

inline Report run_chain(const SpinChainQuery& s) {
  const SpinRay initial = s.state.ray();
  Report r{"spin_chain"};
  r.summary.emplace_back("unit", std::string("hbar/2"));
  r.summary.emplace_back("seed", static_cast<std::int64_t>(s.seed));
  r.summary.emplace_back("trials", static_cast<std::int64_t>(s.trials));
  std::mt19937_64 engine(s.seed);
  if (s.trials == 1) {
    r.columns = {"step", "theta", "outcome", "probability", "post_up_re", "post_up_im", "post_down_re", "post_down_im"};
    const auto trajectory = sequential_chain(initial, s.thetas, engine);
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      const auto& m = trajectory[i];
      std::vector<Cell> row{static_cast<std::int64_t>(i), m.theta, static_cast<std::int64_t>(eigenvalue(m.value)),
                            m.probability};
      for (auto& c : state_cells(m.post_state)) row.push_back(std::move(c));
      r.rows.push_back(std::move(row));
    }
    return r;
  }
  std::vector<std::uint64_t> ups(s.thetas.size(), 0);
  for (std::uint64_t t = 0; t < s.trials; ++t) {
    const auto trajectory = sequential_chain(initial, s.thetas, engine);
    for (std::size_t i = 0; i < trajectory.size(); ++i) ups[i] += trajectory[i].value == Spin::Up;
  }
  const auto expected = chain_up_marginals(initial, s.thetas);
  r.columns = {"step", "theta", "frequency_up", "probability_up"};
  for (std::size_t i = 0; i < s.thetas.size(); ++i)
    r.rows.push_back({static_cast<std::int64_t>(i), s.thetas[i],
                      static_cast<double>(ups[i]) / static_cast<double>(s.trials), expected[i]});
  return r;
}

}  // namespace detail

inline Report run(const Scenario& scenario) {
  try {
    return std::visit(
        [](const auto& s) -> Report {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, CoinQuery>) {
            Report r{"coin"};
            const GroupAction action = coin_action();
            detail::add_group(r, action.group());
            detail::add_table_rows(r, uniform_over_action(action));
            return r;
          } else if constexpr (std::is_same_v<T, DieQuerySpec>) {
            return detail::run_die(s);
          } else if constexpr (std::is_same_v<T, IntervalQuery>) {
            return detail::run_interval(s);
          } else if constexpr (std::is_same_v<T, VonMisesQuery>) {
            return detail::run_von_mises(s);
          } else if constexpr (std::is_same_v<T, SpinQuery>) {
            return detail::run_spin(s);
          } else {
            return detail::run_chain(s);
          }
        },
        scenario);
  } catch (const Error& e) {
    throw Error(e.kind(), "scenario '" + std::string(kind_name(scenario)) + "': " + e.what());
  }
}

}  // namespace invprob::cli
