#include "invprob/haar.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "invprob/oracle.hpp"

namespace invprob {
namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Structural;
}

OneParamFamily custom_product() {
  return OneParamFamily::custom([](double a, double b) { return a * b; }, 1.0, 0.0);
}

OneParamFamily custom_sum() {
  return OneParamFamily::custom([](double a, double b) { return a + b; }, 0.0);
}

double integral_of(const NormalizedDensity& d) {
  return oracle::integrate([&](double x) { return density_at(d, x); }, d.support().lower, d.support().upper);
}

TEST(HaarWeight, ClosedForms) {
  EXPECT_EQ(haar_weight(OneParamFamily::translation(), 17.3), 1.0);
  EXPECT_EQ(haar_weight(OneParamFamily::scale(), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(haar_weight(OneParamFamily::scale(), 4.0), 0.25);
  EXPECT_EQ(kind_of([] { haar_weight(OneParamFamily::scale(), 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { haar_weight(OneParamFamily::scale(), -2.0); }), ErrorKind::Domain);
}

TEST(HaarWeight, CustomFiniteDifference) {
  EXPECT_NEAR(haar_weight(custom_product(), 2.0), 0.5, 1e-6);
  EXPECT_NEAR(haar_weight(custom_sum(), -40.0), 1.0, 1e-6);
}

TEST(HaarWeight, CustomMatchesClosedFormsOnLogGrid) {
  for (int i = 0; i <= 40; ++i) {
    const double p = std::pow(10.0, -2.0 + 4.0 * i / 40);
    EXPECT_NEAR(haar_weight(custom_product(), p), 1 / p, 1e-6) << p;
    EXPECT_NEAR(haar_weight(custom_sum(), p), 1.0, 1e-6) << p;
  }
}

TEST(HaarWeight, NonlinearCustomLaw) {
  // a' = a * exp(b) on positive reals with identity 0: d/db at 0 is a, weight 1/a.
  const auto exp_scale = OneParamFamily::custom([](double a, double b) { return a * std::exp(b); }, 0.0);
  for (double p : {0.5, 1.0, 3.0, 20.0}) EXPECT_NEAR(haar_weight(exp_scale, p), 1 / p, 1e-9);
}

TEST(OneParamFamily, CustomIdentityIsChecked) {
  EXPECT_EQ(kind_of([] { OneParamFamily::custom([](double a, double b) { return a + b + 1; }, 0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { OneParamFamily::custom([](double a, double b) { return a * b; }, 1.0, 2.0, 5.0); }),
            ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { OneParamFamily::custom({}, 0.0); }), ErrorKind::Domain);
}

TEST(Normalize, LaplaceOnTwoSeven) {
  const auto d = normalize(OneParamFamily::translation(), {2, 7});
  EXPECT_DOUBLE_EQ(d.normalizer(), 5.0);
  for (double x : {2.0, 3.3, 7.0}) EXPECT_DOUBLE_EQ(density_at(d, x), 0.2);
  EXPECT_EQ(d.closed_form(), "uniform");
}

TEST(Normalize, JeffreysOnOneE) {
  const auto d = normalize(OneParamFamily::scale(), {1, std::numbers::e});
  EXPECT_NEAR(density_at(d, 1.0), 1.0, 1e-15);
  EXPECT_EQ(d.closed_form(), "reciprocal");
}

TEST(Normalize, UnitIntervalAnywhere) {
  for (double a : {-1e3, -2.5, 0.0, 0.25, 41.0}) {
    const auto d = normalize(OneParamFamily::translation(), {a, a + 1});
    EXPECT_NEAR(density_at(d, a + 0.5), 1.0, 1e-12);
  }
}

TEST(Normalize, Errors) {
  EXPECT_EQ(kind_of([] { normalize(OneParamFamily::translation(), {3, 3}); }), ErrorKind::DegenerateConstraint);
  EXPECT_EQ(kind_of([] { normalize(OneParamFamily::translation(), {4, 3}); }), ErrorKind::DegenerateConstraint);
  EXPECT_EQ(kind_of([] { normalize(OneParamFamily::scale(), {-1, 2}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { normalize(OneParamFamily::scale(), {0, 2}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { normalize(OneParamFamily::translation(), {0, INFINITY}); }), ErrorKind::Domain);
}

TEST(Normalize, CustomUsesQuadrature) {
  const auto d = normalize(custom_product(), {1, 4});
  EXPECT_NEAR(d.normalizer(), std::log(4.0), 1e-11);
  EXPECT_EQ(d.closed_form(), "numeric");
  EXPECT_NEAR(integral_of(d), 1.0, 1e-10);
}

TEST(DensityAt, JeffreysOnOneTwo) {
  const auto d = normalize(OneParamFamily::scale(), {1, 2});
  // Closed form 1 / (tau ln(tau2 / tau1)); normalization cross-checked by quadrature.
  EXPECT_NEAR(density_at(d, 1.5), 1 / (1.5 * std::log(2.0)), 1e-15);
  EXPECT_NEAR(density_at(d, 1.5), 0.96179669392598, 1e-12);
  EXPECT_NEAR(integral_of(d), 1.0, 1e-10);
  EXPECT_EQ(density_at(d, 0.5), 0.0);
  EXPECT_EQ(density_at(d, 2.5), 0.0);
}

TEST(Cdf, ClosedForms) {
  EXPECT_DOUBLE_EQ(cdf(normalize(OneParamFamily::translation(), {0, 10}), 2.5), 0.25);
  EXPECT_NEAR(cdf(normalize(OneParamFamily::scale(), {1, 4}), 2.0), 0.5, 1e-15);
  const auto d = normalize(OneParamFamily::scale(), {1, 4});
  EXPECT_EQ(cdf(d, 0.5), 0.0);
  EXPECT_EQ(cdf(d, 1.0), 0.0);
  EXPECT_EQ(cdf(d, 4.0), 1.0);
  EXPECT_EQ(cdf(d, 9.0), 1.0);
}

TEST(Cdf, CustomAgreesWithClosedForm) {
  const auto custom = normalize(custom_product(), {1, 4});
  const auto exact = normalize(OneParamFamily::scale(), {1, 4});
  for (double x = 1.0; x <= 4.0; x += 0.25) EXPECT_NEAR(cdf(custom, x), cdf(exact, x), 1e-10) << x;
}

TEST(Cdf, MonotoneOnGrid) {
  for (const auto& d : {normalize(OneParamFamily::scale(), {0.1, 30}), normalize(custom_product(), {0.5, 3})}) {
    double prev = 0;
    for (int i = 0; i <= 200; ++i) {
      const double x = d.support().lower - 0.1 + (d.support().upper - d.support().lower + 0.2) * i / 200;
      const double c = cdf(d, x);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(Quantile, Values) {
  EXPECT_DOUBLE_EQ(quantile(normalize(OneParamFamily::translation(), {2, 7}), 0.5), 4.5);
  for (auto [lo, hi] : {std::pair{1.0, 4.0}, std::pair{0.3, 17.0}, std::pair{2.0, 3.0}}) {
    const auto d = normalize(OneParamFamily::scale(), {lo, hi});
    const double numeric = oracle::invert_cdf([&](double x) { return std::log(x / lo) / std::log(hi / lo); }, lo, hi, 0.5);
    EXPECT_NEAR(quantile(d, 0.5), std::sqrt(lo * hi), 1e-12);
    EXPECT_NEAR(numeric, std::sqrt(lo * hi), 1e-10);
  }
  EXPECT_EQ(kind_of([] { quantile(normalize(OneParamFamily::translation(), {0, 1}), 1.5); }), ErrorKind::Range);
  EXPECT_EQ(kind_of([] { quantile(normalize(OneParamFamily::translation(), {0, 1}), -0.1); }), ErrorKind::Range);
}

TEST(Quantile, CustomBisection) {
  const auto d = normalize(custom_product(), {1, 9});
  EXPECT_NEAR(quantile(d, 0.5), 3.0, 1e-10);
}

TEST(Quantile, InvertsCdfInInterior) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& d : {normalize(OneParamFamily::translation(), {-3, 8}), normalize(OneParamFamily::scale(), {0.01, 100}),
                        normalize(custom_product(), {0.5, 5})}) {
    for (int i = 0; i < 50; ++i) {
      const double x = d.support().lower + (d.support().upper - d.support().lower) * (0.01 + 0.98 * u(rng));
      EXPECT_NEAR(quantile(d, cdf(d, x)), x, 1e-8 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST(Sample, DeterministicAndInsideSupport) {
  const auto d = normalize(OneParamFamily::scale(), {1, 4});
  const auto a = sample(d, 99, 1000), b = sample(d, 99, 1000);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sample(d, 100, 1000));
  for (double x : a) {
    EXPECT_GE(x, 1.0);
    EXPECT_LE(x, 4.0);
  }
  EXPECT_EQ(kind_of([&] { sample(d, 1, 0); }), ErrorKind::Range);
}

TEST(Sample, TranslationMeanWithinFourStandardErrors) {
  const std::size_t n = 100'000;
  const auto xs = sample(normalize(OneParamFamily::translation(), {0, 1}), 2024, n);
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  EXPECT_LE(std::abs(mean - 0.5), 4 / (std::sqrt(12.0) * std::sqrt(static_cast<double>(n))));
}

TEST(Sample, ScaleFractionBelowGeometricMean) {
  const std::size_t n = 100'000;
  const auto xs = sample(normalize(OneParamFamily::scale(), {1, 4}), 77, n);
  const auto report = oracle::frequency_test(
      "scale below 2", [&](std::size_t i) { return xs[i]; }, [](double x) { return x < 2; }, 0.5, n);
  EXPECT_TRUE(report.passed) << oracle::render(report);
}

TEST(Pushforward, WaterToWine) {
  const auto water = von_mises_reduce({1, 2});
  const auto wine = pushforward_affine(water, -1, 1);
  EXPECT_NEAR(wine.support().lower, 1.0 / 3, 1e-15);
  EXPECT_NEAR(wine.support().upper, 0.5, 1e-15);
  EXPECT_NEAR(density_at(wine, 0.4), 6.0, 1e-12);
  EXPECT_NEAR(integral_of(wine), 1.0, 1e-10);
}

TEST(Pushforward, IdentityAndDilation) {
  const auto unit = normalize(OneParamFamily::translation(), {0, 1});
  const auto same = pushforward_affine(unit, 1, 0);
  EXPECT_EQ(same.support().lower, 0.0);
  EXPECT_EQ(same.support().upper, 1.0);
  EXPECT_EQ(density_at(same, 0.3), 1.0);
  const auto doubled = pushforward_affine(unit, 2, 0);
  EXPECT_EQ(doubled.support().upper, 2.0);
  EXPECT_DOUBLE_EQ(density_at(doubled, 1.7), 0.5);
}

TEST(Pushforward, ScaleStaysScaleUnderDilation) {
  const auto d = normalize(OneParamFamily::scale(), {1, 4});
  const auto y = pushforward_affine(d, 3, 0);
  EXPECT_EQ(y.family().kind(), FamilyKind::Scale);
  // p_Y(y) = p_X(y / 3) / 3
  for (double v : {3.5, 6.0, 11.0}) EXPECT_NEAR(density_at(y, v), density_at(d, v / 3) / 3, 1e-14);
}

TEST(Pushforward, Errors) {
  const auto d = normalize(OneParamFamily::scale(), {1, 4});
  EXPECT_EQ(kind_of([&] { pushforward_affine(d, 0, 1); }), ErrorKind::DegenerateMap);
  EXPECT_EQ(kind_of([&] { pushforward_affine(d, 1, 1); }), ErrorKind::UnsupportedPushforward);
  EXPECT_EQ(kind_of([&] { pushforward_affine(normalize(custom_product(), {1, 2}), 2, 0); }),
            ErrorKind::UnsupportedPushforward);
}

TEST(VonMises, RatiosOneTwo) {
  const auto d = von_mises_reduce({1, 2});
  EXPECT_DOUBLE_EQ(d.support().lower, 0.5);
  EXPECT_NEAR(d.support().upper, 2.0 / 3, 1e-16);
  EXPECT_NEAR(density_at(d, 0.6), 6.0, 1e-12);
  EXPECT_NEAR(cdf(d, 7.0 / 12), 0.5, 1e-12);
  EXPECT_NEAR(quantile(d, 0.5), 7.0 / 12, 1e-15);
}

TEST(VonMises, RatiosOneThree) {
  const auto d = von_mises_reduce({1, 3});
  EXPECT_NEAR(d.support().upper, 0.75, 1e-16);
  EXPECT_NEAR(density_at(d, 0.6), 4.0, 1e-12);
}

TEST(VonMises, NarrowRatioBand) {
  const double eps = 1e-3;
  const auto d = von_mises_reduce({1, 1 + eps});
  const double width = (1 + eps) / (2 + eps) - 0.5;
  EXPECT_NEAR(d.support().upper - d.support().lower, width, 1e-15);
  EXPECT_NEAR(density_at(d, 0.5 + width / 2), 1 / width, 1e-6);
}

TEST(VonMises, Errors) {
  EXPECT_EQ(kind_of([] { von_mises_reduce({0, 2}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { von_mises_reduce({2, 1}); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { von_mises_reduce({1, INFINITY}); }), ErrorKind::Domain);
}

TEST(VonMises, ReparameterizationConsistency) {
  const auto water = von_mises_reduce({1, 2});
  const auto wine = pushforward_affine(water, -1, 1);
  EXPECT_NEAR(cdf(water, 7.0 / 12), 0.5, 1e-12);
  EXPECT_NEAR(1 - cdf(wine, 5.0 / 12), 0.5, 1e-12);
}

// Property: the unnormalized measure of an interval is unchanged by the group's own action.
TEST(HaarMeasure, InvariantUnderGroupAction) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> pos(0.01, 50), shift(-100, 100), factor(0.01, 100);
  for (int i = 0; i < 100; ++i) {
    double a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const double c = shift(rng), k = factor(rng);
    EXPECT_NEAR(haar_measure(OneParamFamily::translation(), a + c, b + c), haar_measure(OneParamFamily::translation(), a, b), 1e-10);
    EXPECT_NEAR(haar_measure(OneParamFamily::scale(), k * a, k * b), haar_measure(OneParamFamily::scale(), a, b), 1e-10);
  }
}

TEST(HaarMeasure, EveryDensityIntegratesToOne) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(0.05, 20);
  for (int i = 0; i < 20; ++i) {
    double a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    EXPECT_NEAR(integral_of(normalize(OneParamFamily::translation(), {a, b})), 1.0, 1e-10);
    EXPECT_NEAR(integral_of(normalize(OneParamFamily::scale(), {a, b})), 1.0, 1e-10);
  }
  EXPECT_NEAR(integral_of(normalize(custom_product(), {0.2, 7})), 1.0, 1e-10);
}

TEST(GridCsv, HeaderAndRows) {
  const auto csv = grid_csv(normalize(OneParamFamily::translation(), {0, 4}), 5);
  EXPECT_EQ(csv, "x,density,cdf\n0,0.25,0\n1,0.25,0.25\n2,0.25,0.5\n3,0.25,0.75\n4,0.25,1\n");
}

}  // namespace
}  // namespace invprob
