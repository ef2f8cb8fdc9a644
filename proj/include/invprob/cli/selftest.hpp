#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include "invprob/action.hpp"
#include "invprob/group.hpp"
#include "invprob/haar.hpp"
#include "invprob/oracle.hpp"
#include "invprob/probability_table.hpp"
#include "invprob/quantum.hpp"

namespace invprob::cli {

/// Cross-checks every module against the independent oracles.
inline std::vector<oracle::CheckReport> selftest() {
  using oracle::make_report;
  std::vector<oracle::CheckReport> out;

  for (const auto& g : {make_cyclic(4), make_dihedral(3), make_octahedral(), make_coin_group(),
                        direct_product(make_dihedral(3), make_cyclic(4))})
    out.push_back(oracle::verify_group_axioms(g));

  {
    const auto got = oracle::order_census(make_octahedral().table());
    const auto want = oracle::cube_rotation_order_census();
    double diff = 0;
    for (std::size_t k = 1; k <= 24; ++k)
      diff += std::abs(static_cast<double>(got.count(k) ? got.at(k) : 0) - static_cast<double>(want.count(k) ? want.at(k) : 0));
    out.push_back(make_report("octahedral order census", diff, 0));
  }
  {
    auto brute = oracle::enumerate_die_orientations();
    auto built = die_orientations();
    std::sort(brute.begin(), brute.end());
    out.push_back(make_report("die orientations", brute == built ? 0 : 1, 0, std::to_string(built.size()) + " states"));
    out.push_back(make_report("die action simply transitive", die_action().is_simply_transitive() ? 0 : 1, 0));
  }
  {
    const GroupAction die = die_action();
    const auto table = uniform_over_action(die);
    const auto off = std::count_if(table.outcomes().begin(), table.outcomes().end(),
                                   [](const Outcome& o) { return o.probability != Rational(1, 24); });
    out.push_back(make_report("die uniform 1/24", static_cast<double>(off), 0));
  }

  {
    double worst = 0;
    for (auto [family, lo, hi] : {std::tuple{OneParamFamily::translation(), 2.0, 7.0},
                                  std::tuple{OneParamFamily::scale(), 1.0, 4.0},
                                  std::tuple{OneParamFamily::scale(), 0.5, 3.0}}) {
      const auto d = normalize(family, {lo, hi});
      worst = std::max(worst, std::abs(oracle::integrate([&](double x) { return density_at(d, x); }, lo, hi) - 1));
    }
    out.push_back(make_report("density normalization", worst, 1e-10));
  }
  {
    const auto water = von_mises_reduce({1, 2});
    const auto wine = pushforward_affine(water, -1, 1);
    const double residual = std::max(std::abs(cdf(water, 7.0 / 12) - 0.5), std::abs(1 - cdf(wine, 5.0 / 12) - 0.5));
    out.push_back(make_report("water/wine median 7/12", residual, 1e-12));
  }

  {
    double worst = 0;
    for (int i = 0; i < 720; ++i) {
      const double theta = 2 * std::numbers::pi * i / 720;
      const auto obs = observable(theta);
      const auto eig = eigensystem(obs);
      const auto ref = oracle::symmetric_eigensolver_2x2(
          {{{obs.matrix[0][0].real(), obs.matrix[0][1].real()}, {obs.matrix[1][0].real(), obs.matrix[1][1].real()}}});
      worst = std::max({worst, std::abs(ref[0].value - 1), std::abs(ref[1].value + 1),
                        std::abs(eig.up.vector.up().real() - ref[0].vector[0]),
                        std::abs(eig.up.vector.down().real() - ref[0].vector[1]),
                        std::abs(eig.down.vector.up().real() - ref[1].vector[0]),
                        std::abs(eig.down.vector.down().real() - ref[1].vector[1])});
    }
    out.push_back(make_report("spin eigensystem vs generic solver", worst, 1e-12));
  }
  {
    const double thetas[] = {std::numbers::pi / 2};
    std::mt19937_64 engine(20240101);
    out.push_back(oracle::frequency_test(
        "spin frequency theta=pi/2",
        [&](std::size_t) { return sequential_chain(SpinRay::spin_up(), thetas, engine).front().value; },
        [](Spin s) { return s == Spin::Up; }, 0.5, 100'000));
  }
  {
    const auto samples = sample(normalize(OneParamFamily::translation(), {0, 1}), 7, 100'000);
    out.push_back(oracle::frequency_test(
        "translation sampling median", [&](std::size_t i) { return samples[i]; }, [](double x) { return x < 0.5; },
        0.5, samples.size()));
  }
  return out;
}

}  // namespace invprob::cli
