#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invprob/error.hpp"

namespace invprob {

enum class FamilyKind { Translation, Scale, Custom };

inline std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Translation: return "translation";
    case FamilyKind::Scale: return "scale";
    case FamilyKind::Custom: return "custom";
  }
  return "unknown";
}

/// A one-parameter transformation group, described by its composition law and identity.
class OneParamFamily {
 public:
  using Law = std::function<double(double, double)>;

  /// x' = x + a, identity 0, all reals.
  static OneParamFamily translation() {
    return OneParamFamily(FamilyKind::Translation, [](double a, double b) { return a + b; }, 0.0,
                          -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  }

  /// x' = x * b, identity 1, positive reals.
  static OneParamFamily scale() {
    return OneParamFamily(FamilyKind::Scale, [](double a, double b) { return a * b; }, 1.0, 0.0,
                          std::numeric_limits<double>::infinity());
  }

  /// A caller-supplied law on the open parameter domain (domain_lower, domain_upper).
  /// The identity is checked numerically: law(a, identity) must reproduce a.
  static OneParamFamily custom(Law law, double identity,
                               double domain_lower = -std::numeric_limits<double>::infinity(),
                               double domain_upper = std::numeric_limits<double>::infinity()) {
    if (!law) throw Error(ErrorKind::Domain, "custom family needs a composition law");
    if (!(domain_lower < domain_upper) || !(identity > domain_lower && identity < domain_upper))
      throw Error(ErrorKind::Domain, "custom family identity must lie inside its domain");
    OneParamFamily family(FamilyKind::Custom, std::move(law), identity, domain_lower, domain_upper);
    for (double a : family.probe_points()) {
      const double got = family.law_(a, identity);
      if (!(std::abs(got - a) <= 1e-9 * std::max(1.0, std::abs(a))))
        throw Error(ErrorKind::Domain, "custom law does not fix parameters at the declared identity");
    }
    return family;
  }

  FamilyKind kind() const noexcept { return kind_; }
  double identity() const noexcept { return identity_; }
  double compose(double a, double b) const { return law_(a, b); }
  double domain_lower() const noexcept { return lower_; }
  double domain_upper() const noexcept { return upper_; }
  bool contains(double p) const noexcept { return std::isfinite(p) && p > lower_ && p < upper_; }

 private:
  OneParamFamily(FamilyKind kind, Law law, double identity, double lower, double upper)
      : kind_(kind), law_(std::move(law)), identity_(identity), lower_(lower), upper_(upper) {}

  std::vector<double> probe_points() const {
    std::vector<double> points{identity_};
    for (double step : {0.5, 1.0, 3.0, 10.0})
      for (double sign : {-1.0, 1.0}) {
        const double p = identity_ + sign * step * std::max(1.0, std::abs(identity_));
        if (contains(p)) points.push_back(p);
      }
    return points;
  }

  FamilyKind kind_;
  Law law_;
  double identity_;
  double lower_;
  double upper_;
};

/// Left-invariant weight at parameter p: 1 / (d law(p, b) / db at b = identity).
/// Custom families use a five-point central difference about the identity.
inline double haar_weight(const OneParamFamily& family, double p) {
  if (!family.contains(p))
    throw Error(ErrorKind::Domain, "parameter " + std::to_string(p) + " outside the " +
                                       std::string(to_string(family.kind())) + " family domain");
  switch (family.kind()) {
    case FamilyKind::Translation: return 1.0;
    case FamilyKind::Scale: return 1.0 / p;
    case FamilyKind::Custom: break;
  }
  const double e = family.identity();
  // The stencil spans e +- 2h and must stay inside the domain.
  const double h = std::min({1e-3 * std::max(1.0, std::abs(e)), (e - family.domain_lower()) / 4,
                             (family.domain_upper() - e) / 4});
  const double derivative = (-family.compose(p, e + 2 * h) + 8 * family.compose(p, e + h) -
                             8 * family.compose(p, e - h) + family.compose(p, e - 2 * h)) /
                            (12 * h);
  if (!std::isfinite(derivative) || derivative <= 0)
    throw Error(ErrorKind::Domain, "custom law has no positive derivative at the identity for p = " + std::to_string(p));
  return 1.0 / derivative;
}

/// Observation bounds lower < x < upper.
struct IntervalConstraint {
  double lower = 0;
  double upper = 1;
};

namespace detail {

struct SimpsonState {
  const std::function<double(double)>* fn;
  int max_depth;
  std::size_t evaluations = 0;
  bool failed = false;
};

inline double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb, double whole,
                              double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = (*st.fn)(lm), frm = (*st.fn)(rm);
  st.evaluations += 2;
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  if (depth >= st.max_depth || st.evaluations > 50'000'000) {
    st.failed = true;
    return left + right + delta / 15;
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

/// Adaptive Simpson, absolute tolerance, bounded recursion depth.
inline double adaptive_simpson(const std::function<double(double)>& fn, double a, double b, double tol = 1e-12,
                               int max_depth = 40) {
  SimpsonState st{&fn, max_depth};
  const double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double result = simpson_recurse(st, a, b, fa, fm, fb, whole, tol, 0);
  if (st.failed || !std::isfinite(result))
    throw Error(ErrorKind::Integration, "adaptive Simpson did not converge on [" + std::to_string(a) + ", " +
                                            std::to_string(b) + "]");
  return result;
}

inline void check_constraint(const OneParamFamily& family, const IntervalConstraint& c) {
  if (!std::isfinite(c.lower) || !std::isfinite(c.upper))
    throw Error(ErrorKind::Domain, "interval bounds must be finite");
  if (!(c.lower < c.upper))
    throw Error(ErrorKind::DegenerateConstraint, "interval needs lower < upper, got [" + std::to_string(c.lower) +
                                                     ", " + std::to_string(c.upper) + "]");
  if (family.kind() == FamilyKind::Scale && c.lower <= 0)
    throw Error(ErrorKind::Domain, "scale family needs a positive lower bound");
  if (!family.contains(c.lower) || !family.contains(c.upper))
    throw Error(ErrorKind::Domain, "interval leaves the family's parameter domain");
}

}  // namespace detail

/// Unnormalized group measure of [lower, upper]: the integral of the Haar weight.
inline double haar_measure(const OneParamFamily& family, double lower, double upper) {
  detail::check_constraint(family, {lower, upper});
  switch (family.kind()) {
    case FamilyKind::Translation: return upper - lower;
    case FamilyKind::Scale: return std::log(upper / lower);
    case FamilyKind::Custom: break;
  }
  const std::function<double(double)> weight = [&](double x) { return haar_weight(family, x); };
  return detail::adaptive_simpson(weight, lower, upper);
}

/// The group-measure density on an observation interval: weight / normalizer on the support.
/// Conventionally a Laplace prior for translations and a Jeffreys prior for scalings.
class NormalizedDensity {
 public:
  const OneParamFamily& family() const noexcept { return family_; }
  const IntervalConstraint& support() const noexcept { return support_; }
  double normalizer() const noexcept { return normalizer_; }

  /// "uniform", "reciprocal" or "numeric".
  std::string_view closed_form() const noexcept {
    switch (family_.kind()) {
      case FamilyKind::Translation: return "uniform";
      case FamilyKind::Scale: return "reciprocal";
      case FamilyKind::Custom: return "numeric";
    }
    return "numeric";
  }

 private:
  friend NormalizedDensity normalize(const OneParamFamily&, const IntervalConstraint&);
  NormalizedDensity(OneParamFamily family, IntervalConstraint support, double normalizer)
      : family_(std::move(family)), support_(support), normalizer_(normalizer) {}

  OneParamFamily family_;
  IntervalConstraint support_;
  double normalizer_;
};

inline NormalizedDensity normalize(const OneParamFamily& family, const IntervalConstraint& c) {
  return NormalizedDensity(family, c, haar_measure(family, c.lower, c.upper));
}

inline double density_at(const NormalizedDensity& d, double x) {
  const auto& s = d.support();
  if (!(x >= s.lower && x <= s.upper)) return 0.0;
  switch (d.family().kind()) {
    case FamilyKind::Translation: return 1.0 / d.normalizer();
    case FamilyKind::Scale: return 1.0 / (x * d.normalizer());
    case FamilyKind::Custom: break;
  }
  return haar_weight(d.family(), x) / d.normalizer();
}

inline double cdf(const NormalizedDensity& d, double x) {
  const auto& s = d.support();
  if (x <= s.lower) return 0.0;
  if (x >= s.upper) return 1.0;
  double value = 0;
  switch (d.family().kind()) {
    case FamilyKind::Translation: value = (x - s.lower) / (s.upper - s.lower); break;
    case FamilyKind::Scale: value = std::log(x / s.lower) / d.normalizer(); break;
    case FamilyKind::Custom: value = haar_measure(d.family(), s.lower, x) / d.normalizer(); break;
  }
  return std::clamp(value, 0.0, 1.0);
}

inline double quantile(const NormalizedDensity& d, double q) {
  if (!(q >= 0 && q <= 1)) throw Error(ErrorKind::Range, "quantile level must lie in [0, 1]");
  const auto& s = d.support();
  if (q == 0) return s.lower;
  if (q == 1) return s.upper;
  switch (d.family().kind()) {
    case FamilyKind::Translation: return s.lower + q * (s.upper - s.lower);
    case FamilyKind::Scale: return s.lower * std::exp(q * d.normalizer());
    case FamilyKind::Custom: break;
  }
  double lo = s.lower, hi = s.upper;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(d, mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine output.
inline double unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Inverse-transform sampling; identical seeds give identical draws on every platform.
inline std::vector<double> sample(const NormalizedDensity& d, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::Range, "sample count must be at least 1");
  std::mt19937_64 engine(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(d, unit_uniform(engine)));
  return out;
}

/// Density of y = a*x + b. Closed under the map only for translations (any a, b) and
/// scalings with b = 0, a > 0; other cases are rejected.
inline NormalizedDensity pushforward_affine(const NormalizedDensity& d, double a, double b) {
  if (a == 0 || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorKind::DegenerateMap, "affine map needs finite a != 0 and finite b");
  const double y0 = a * d.support().lower + b, y1 = a * d.support().upper + b;
  const IntervalConstraint mapped{std::min(y0, y1), std::max(y0, y1)};
  switch (d.family().kind()) {
    case FamilyKind::Translation: return normalize(OneParamFamily::translation(), mapped);
    case FamilyKind::Scale:
      if (b == 0 && a > 0) return normalize(OneParamFamily::scale(), mapped);
      break;
    case FamilyKind::Custom: break;
  }
  throw Error(ErrorKind::UnsupportedPushforward,
              "affine image of a " + std::string(to_string(d.family().kind())) + " density is not in its family");
}

/// Water-to-wine ratio bounds, under the additive-volume theory M = E + V.
struct VonMisesScenario {
  double ratio_lower = 1;
  double ratio_upper = 2;
};

/// Maps ratio bounds r to water-fraction bounds r / (1 + r); the water fraction is a
/// translation parameter, so its density is constant on that interval.
inline NormalizedDensity von_mises_reduce(const VonMisesScenario& s) {
  if (!std::isfinite(s.ratio_lower) || !std::isfinite(s.ratio_upper) || !(s.ratio_lower > 0) ||
      !(s.ratio_lower < s.ratio_upper))
    throw Error(ErrorKind::Domain, "ratio bounds need 0 < lower < upper");
  const double lo = s.ratio_lower / (1 + s.ratio_lower);
  const double hi = s.ratio_upper / (1 + s.ratio_upper);
  return normalize(OneParamFamily::translation(), {lo, hi});
}

/// Evenly spaced (x, density, cdf) rows across the support, as CSV with a header line.
inline std::string grid_csv(const NormalizedDensity& d, std::size_t points = 101) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(12);
  out << "x,density,cdf\n";
  const auto& s = d.support();
  for (std::size_t i = 0; i < points; ++i) {
    const double x = points == 1 ? s.lower : s.lower + (s.upper - s.lower) * static_cast<double>(i) / static_cast<double>(points - 1);
    out << x << "," << density_at(d, x) << "," << cdf(d, x) << "\n";
  }
  return out.str();
}

}  // namespace invprob
