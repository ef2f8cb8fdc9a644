#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "invprob/error.hpp"
#include "invprob/haar.hpp"

namespace invprob {

using Complex = std::complex<double>;
using Matrix2c = std::array<std::array<Complex, 2>, 2>;

inline constexpr double kNormTolerance = 1e-12;
/// Outcome probabilities at or below this are treated as impossible.
inline constexpr double kImpossibleProbability = 1e-14;

/// A unit vector in C^2, compared as a ray (modulo a global phase).
class SpinRay {
 public:
  SpinRay(Complex up, Complex down) : a_(up), b_(down) {
    const double norm = std::norm(a_) + std::norm(b_);
    if (!std::isfinite(norm) || std::abs(norm - 1) > kNormTolerance)
      throw Error(ErrorKind::Normalization, "spin ray has squared norm " + std::to_string(norm) + ", expected 1");
  }

  /// Rescales any nonzero vector onto the unit sphere.
  static SpinRay normalized(Complex up, Complex down) {
    const double len = std::sqrt(std::norm(up) + std::norm(down));
    if (!(len > 0) || !std::isfinite(len)) throw Error(ErrorKind::Normalization, "cannot normalize a zero vector");
    return SpinRay(up / len, down / len);
  }

  static SpinRay spin_up() { return SpinRay(1.0, 0.0); }
  static SpinRay spin_down() { return SpinRay(0.0, 1.0); }

  Complex up() const noexcept { return a_; }
  Complex down() const noexcept { return b_; }

  /// Same ray: |<this|other>| = 1 within tolerance.
  bool same_ray(const SpinRay& other, double tol = kNormTolerance) const {
    const Complex overlap = std::conj(a_) * other.a_ + std::conj(b_) * other.b_;
    return std::abs(std::abs(overlap) - 1) <= tol;
  }

  SpinRay with_phase(double phi) const {
    const Complex phase = std::polar(1.0, phi);
    return SpinRay(phase * a_, phase * b_);
  }

 private:
  Complex a_;
  Complex b_;
};

/// Spin component along the direction at angle theta from +z in the xz plane,
/// sin(theta) S_x + cos(theta) S_z, in units of hbar/2.
struct SpinObservable {
  double theta = 0;
  Matrix2c matrix{};
};

inline SpinObservable observable(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::Domain, "theta must be finite");
  const double c = std::cos(theta), s = std::sin(theta);
  return {theta, Matrix2c{{{c, s}, {s, -c}}}};
}

enum class Spin : int { Down = -1, Up = +1 };

inline int eigenvalue(Spin s) { return static_cast<int>(s); }

struct Eigenpair {
  Spin value;
  SpinRay vector;
};

struct Eigensystem {
  Eigenpair up;    // +1
  Eigenpair down;  // -1

  const Eigenpair& operator[](Spin s) const { return s == Spin::Up ? up : down; }
};

/// Closed-form eigenvectors (cos(theta/2), sin(theta/2)) and (-sin(theta/2), cos(theta/2)),
/// taken with theta in [0, 2pi). The +1 vector has its first nonzero component real and
/// nonnegative; the -1 vector is its quarter-turn (-v1, v0).
inline Eigensystem eigensystem(const SpinObservable& obs) {
  double theta = std::fmod(obs.theta, 2 * std::numbers::pi);
  if (theta < 0) theta += 2 * std::numbers::pi;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  if (c < 0 || (c == 0 && s < 0)) {
    c = -c;
    s = -s;
  }
  return {{Spin::Up, SpinRay(c, s)}, {Spin::Down, SpinRay(-s, c)}};
}

inline Complex inner(const SpinRay& bra, const SpinRay& ket) {
  return std::conj(bra.up()) * ket.up() + std::conj(bra.down()) * ket.down();
}

/// Coefficients of the ray in the observable's eigenbasis: (amp_up, amp_down).
inline std::pair<Complex, Complex> amplitudes(const SpinRay& ray, const SpinObservable& obs) {
  const auto eig = eigensystem(obs);
  return {inner(eig.up.vector, ray), inner(eig.down.vector, ray)};
}

/// Squared moduli of the amplitudes: (P(+1), P(-1)).
inline std::pair<double, double> probabilities(const SpinRay& ray, const SpinObservable& obs) {
  const auto [up, down] = amplitudes(ray, obs);
  return {std::norm(up), std::norm(down)};
}

inline double probability_of(const SpinRay& ray, const SpinObservable& obs, Spin outcome) {
  const auto [up, down] = probabilities(ray, obs);
  return outcome == Spin::Up ? up : down;
}

/// Post-measurement state: the eigenvector of the observed eigenvalue.
inline SpinRay collapse(const SpinRay& ray, const SpinObservable& obs, Spin outcome) {
  if (probability_of(ray, obs, outcome) <= kImpossibleProbability)
    throw Error(ErrorKind::ImpossibleOutcome, "outcome " + std::to_string(eigenvalue(outcome)) +
                                                  " has probability 0 at theta = " + std::to_string(obs.theta));
  return eigensystem(obs)[outcome].vector;
}

struct MeasurementOutcome {
  double theta;
  Spin value;
  double probability;  // of the observed value, given the state before this step
  SpinRay post_state;
};

/// Measures at each angle in turn, sampling each outcome from the current state and
/// collapsing onto it. Draws one uniform per step from `engine`.
inline std::vector<MeasurementOutcome> sequential_chain(const SpinRay& initial, std::span<const double> thetas,
                                                        std::mt19937_64& engine) {
  if (thetas.empty()) throw Error(ErrorKind::Range, "measurement chain needs at least one angle");
  std::vector<MeasurementOutcome> trajectory;
  trajectory.reserve(thetas.size());
  SpinRay state = initial;
  for (double theta : thetas) {
    const SpinObservable obs = observable(theta);
    const auto [p_up, p_down] = probabilities(state, obs);
    const Spin value = unit_uniform(engine) < p_up / (p_up + p_down) ? Spin::Up : Spin::Down;
    state = eigensystem(obs)[value].vector;
    trajectory.push_back({theta, value, value == Spin::Up ? p_up : p_down, state});
  }
  return trajectory;
}

inline std::vector<MeasurementOutcome> sequential_chain(const SpinRay& initial, std::span<const double> thetas,
                                                        std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return sequential_chain(initial, thetas, engine);
}

/// Exact probability of +1 at every step of a chain, marginalized over earlier outcomes.
/// After the first step the state is always one of two eigenvectors, so this is a
/// two-state Markov recursion.
inline std::vector<double> chain_up_marginals(const SpinRay& initial, std::span<const double> thetas) {
  std::vector<double> out;
  if (thetas.empty()) return out;
  auto obs = observable(thetas[0]);
  double p_up = probabilities(initial, obs).first;
  out.push_back(p_up);
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    const auto prev = eigensystem(obs);
    obs = observable(thetas[i]);
    p_up = p_up * probabilities(prev.up.vector, obs).first + (1 - p_up) * probabilities(prev.down.vector, obs).first;
    out.push_back(p_up);
  }
  return out;
}

}  // namespace invprob
