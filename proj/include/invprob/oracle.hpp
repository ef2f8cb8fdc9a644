#pragma once

// Independent verification routines. Nothing here calls into the code it checks:
// enumerations, quadrature and eigen-solves are written from scratch.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invprob/action.hpp"
#include "invprob/error.hpp"
#include "invprob/group.hpp"

namespace invprob::oracle {

struct CheckReport {
  std::string name;
  bool passed = false;
  double worst_residual = 0;
  double tolerance = 0;
  std::string details;
};

inline CheckReport make_report(std::string name, double worst_residual, double tolerance, std::string details = {}) {
  return {std::move(name), worst_residual <= tolerance, worst_residual, tolerance, std::move(details)};
}

/// "<name> PASS|FAIL residual=<r>"
inline std::string render(const CheckReport& r) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(6);
  out << r.name << " " << (r.passed ? "PASS" : "FAIL") << " residual=" << r.worst_residual;
  if (!r.details.empty()) out << " (" << r.details << ")";
  return out.str();
}

/// Counts violations of closure, identity, inverses and associativity in a raw table.
inline CheckReport verify_group_axioms(const CayleyTable& table, std::string name = "group axioms") {
  const std::size_t n = table.size();
  if (n > 10'000) throw Error(ErrorKind::Precondition, "exhaustive axiom check is limited to order 10^4");
  std::size_t violations = 0;
  for (const auto& row : table) {
    if (row.size() != n) ++violations;
    for (auto x : row) violations += x >= n;
  }
  if (violations || n == 0)
    return make_report(std::move(name), static_cast<double>(violations + (n == 0)), 0, "table not closed");

  std::size_t identity = n;
  for (std::size_t e = 0; e < n && identity == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) ok = ok && table[e][x] == x && table[x][e] == x;
    if (ok) identity = e;
  }
  if (identity == n) return make_report(std::move(name), 1, 0, "no identity");

  for (std::size_t x = 0; x < n; ++x) {
    bool has_inverse = false;
    for (std::size_t y = 0; y < n; ++y) has_inverse = has_inverse || (table[x][y] == identity && table[y][x] == identity);
    violations += !has_inverse;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) violations += table[table[a][b]][c] != table[a][table[b][c]];
  return make_report(std::move(name), static_cast<double>(violations), 0,
                     std::to_string(n) + " elements, " + std::to_string(n * n * n) + " triples");
}

inline CheckReport verify_group_axioms(const FiniteGroup& g) {
  return verify_group_axioms(g.table(), "group axioms " + g.label());
}

/// Element orders of a group read off its table by repeated multiplication.
inline std::map<std::size_t, std::size_t> order_census(const CayleyTable& table) {
  const std::size_t n = table.size();
  std::size_t identity = 0;
  for (std::size_t e = 0; e < n; ++e)
    if (table[e][e] == e) identity = e;
  std::map<std::size_t, std::size_t> census;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t k = 1, x = a;
    while (x != identity && k <= n) {
      x = table[a][x];
      ++k;
    }
    ++census[k];
  }
  return census;
}

/// Element-order census of the cube's rotation group, obtained by enumerating all
/// 3x3 signed permutation matrices of determinant +1 and raising each to powers.
inline std::map<std::size_t, std::size_t> cube_rotation_order_census() {
  using M = std::array<std::array<int, 3>, 3>;
  auto mul = [](const M& a, const M& b) {
    M c{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
  };
  const M eye{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::map<std::size_t, std::size_t> census;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      M m{};
      for (int i = 0; i < 3; ++i) m[i][perm[i]] = (signs >> i & 1) ? -1 : 1;
      const int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      if (det != 1) continue;
      std::size_t k = 1;
      for (M p = m; p != eye; p = mul(p, m)) ++k;
      ++census[k];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return census;
}

/// Brute-force isomorphism search by backtracking over bijections. Intended for orders <= 8.
inline bool are_isomorphic(const CayleyTable& g, const CayleyTable& h) {
  const std::size_t n = g.size();
  if (h.size() != n) return false;
  if (n > 8) throw Error(ErrorKind::Precondition, "brute-force isomorphism is limited to order 8");
  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (map[g[a][b]] != h[map[a]][map[b]]) return false;
      return true;
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t]) continue;
      used[t] = true;
      map[i] = t;
      if (extend(i + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  return extend(0);
}

/// All (up, north) pairs of a standard die with north adjacent to up.
inline std::vector<DieOrientation> enumerate_die_orientations() {
  std::vector<DieOrientation> out;
  for (int up = 1; up <= 6; ++up)
    for (int north = 1; north <= 6; ++north)
      if (north != up && north + up != 7) out.push_back({up, north});
  return out;
}

/// Adaptive Simpson with an explicit work stack.
inline double integrate(const std::function<double(double)>& fn, double lower, double upper, double tol = 1e-12,
                        int max_depth = 50) {
  if (!(lower < upper)) throw Error(ErrorKind::Precondition, "integration needs lower < upper");
  struct Panel {
    double a, b, fa, fm, fb, estimate, tol;
    int depth;
  };
  auto simpson = [](double a, double b, double fa, double fm, double fb) { return (b - a) * (fa + 4 * fm + fb) / 6; };
  const double fa = fn(lower), fb = fn(upper), fm = fn((lower + upper) / 2);
  std::vector<Panel> stack{{lower, upper, fa, fm, fb, simpson(lower, upper, fa, fm, fb), tol, 0}};
  double total = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = (p.a + p.b) / 2;
    const double f1 = fn((p.a + mid) / 2), f3 = fn((mid + p.b) / 2);
    const double left = simpson(p.a, mid, p.fa, f1, p.fm);
    const double right = simpson(mid, p.b, p.fm, f3, p.fb);
    const double err = left + right - p.estimate;
    if (std::abs(err) <= 15 * p.tol) {
      total += left + right + err / 15;
      continue;
    }
    if (p.depth >= max_depth) throw Error(ErrorKind::Integration, "quadrature did not converge at max depth");
    stack.push_back({p.a, mid, p.fa, f1, p.fm, left, p.tol / 2, p.depth + 1});
    stack.push_back({mid, p.b, p.fm, f3, p.fb, right, p.tol / 2, p.depth + 1});
  }
  return total;
}

/// Bisection inverse of a nondecreasing cdf on [lower, upper].
inline double invert_cdf(const std::function<double(double)>& cdf, double lower, double upper, double q,
                         double width = 1e-13) {
  double lo = lower, hi = upper;
  for (int i = 0; i < 200 && hi - lo > width; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (cdf(mid) < q)
      lo = mid;
    else
      hi = mid;
  }
  return lo + (hi - lo) / 2;
}

struct EigenPair2 {
  double value;
  std::array<double, 2> vector;
};

/// Eigen-decomposition of a real symmetric 2x2 matrix [[a, b], [b, d]] by the quadratic
/// formula. Returns the larger eigenvalue first. The first vector has its first nonzero
/// component nonnegative; the second is signed so that det[v1 v2] = +1.
inline std::array<EigenPair2, 2> symmetric_eigensolver_2x2(const std::array<std::array<double, 2>, 2>& m) {
  if (std::abs(m[0][1] - m[1][0]) > 1e-12) throw Error(ErrorKind::Precondition, "matrix is not symmetric");
  const double a = m[0][0], b = m[0][1], d = m[1][1];
  const double mean = (a + d) / 2;
  const double radius = std::hypot((a - d) / 2, b);
  const std::array<double, 2> values{mean + radius, mean - radius};

  auto vector_for = [&](double lambda) -> std::array<double, 2> {
    // Rows of (m - lambda I) are orthogonal to the eigenvector; use the longer row.
    const std::array<double, 2> r0{a - lambda, b}, r1{b, d - lambda};
    const auto& r = std::hypot(r0[0], r0[1]) >= std::hypot(r1[0], r1[1]) ? r0 : r1;
    std::array<double, 2> v{-r[1], r[0]};
    double len = std::hypot(v[0], v[1]);
    if (len == 0) {  // m is a multiple of the identity
      v = lambda == values[0] ? std::array<double, 2>{1, 0} : std::array<double, 2>{0, 1};
      len = 1;
    }
    return {v[0] / len, v[1] / len};
  };

  auto v1 = vector_for(values[0]);
  if (v1[0] < 0 || (v1[0] == 0 && v1[1] < 0)) v1 = {-v1[0], -v1[1]};
  auto v2 = vector_for(values[1]);
  if (v1[0] * v2[1] - v1[1] * v2[0] < 0) v2 = {-v2[0], -v2[1]};
  return {{{values[0], v1}, {values[1], v2}}};
}

/// Two-sided binomial check: passes iff |hits/n - p| <= 4 sqrt(p(1-p)/n).
/// `sampler(i)` produces the outcome of trial i; `event` classifies it.
template <class Sampler, class Event>
CheckReport frequency_test(std::string name, Sampler&& sampler, Event&& event, double p_expected, std::size_t n) {
  if (n < 1000) throw Error(ErrorKind::Precondition, "frequency test needs n >= 1000");
  if (!(p_expected > 0 && p_expected < 1)) throw Error(ErrorKind::Precondition, "expected probability must be in (0, 1)");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += event(sampler(i)) ? 1 : 0;
  const double empirical = static_cast<double>(hits) / static_cast<double>(n);
  const double bound = 4 * std::sqrt(p_expected * (1 - p_expected) / static_cast<double>(n));
  std::ostringstream details;
  details.imbue(std::locale::classic());
  details << "empirical " << empirical << " vs " << p_expected << ", bound " << bound;
  return make_report(std::move(name), std::abs(empirical - p_expected), bound, details.str());
}

}  // namespace invprob::oracle
