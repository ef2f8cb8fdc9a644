#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "invprob/error.hpp"
#include "invprob/group.hpp"

namespace invprob {

/// A group acting on a finite list of labelled states.
/// `act(g, s)` is the index of the state that `g` sends state `s` to.
class GroupAction {
 public:
  GroupAction(FiniteGroup group, std::vector<std::string> states, std::vector<std::vector<std::size_t>> act)
      : group_(std::move(group)), states_(std::move(states)), act_(std::move(act)) {
    const std::size_t n = group_.order(), m = states_.size();
    if (m == 0) throw Error(ErrorKind::Structural, "action needs at least one state");
    if (act_.size() != n) throw Error(ErrorKind::Structural, "action table needs one row per group element");
    for (const auto& row : act_) {
      if (row.size() != m) throw Error(ErrorKind::Structural, "action row has wrong state count");
      for (std::size_t s : row)
        if (s >= m) throw Error(ErrorKind::Structural, "action maps outside the state set");
    }
    for (std::size_t s = 0; s < m; ++s)
      if (act_[group_.identity()][s] != s)
        throw Error(ErrorKind::Structural, "identity moves state '" + states_[s] + "'");
    for (ElementId g = 0; g < n; ++g)
      for (ElementId h = 0; h < n; ++h)
        for (std::size_t s = 0; s < m; ++s)
          if (act_[g][act_[h][s]] != act_[group_.compose(g, h)][s])
            throw Error(ErrorKind::Structural, "action is not compatible with composition");
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t act(ElementId g, std::size_t s) const { return act_.at(g).at(s); }

  std::vector<std::size_t> orbit(std::size_t s) const {
    std::vector<bool> seen(states_.size(), false);
    std::vector<std::size_t> out;
    for (ElementId g = 0; g < group_.order(); ++g) {
      const std::size_t t = act(g, s);
      if (!seen[t]) {
        seen[t] = true;
        out.push_back(t);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_transitive() const { return orbit(0).size() == states_.size(); }

  bool is_simply_transitive() const {
    if (group_.order() != states_.size()) return false;
    for (std::size_t s = 0; s < states_.size(); ++s)
      for (std::size_t t = 0; t < states_.size(); ++t) {
        std::size_t hits = 0;
        for (ElementId g = 0; g < group_.order(); ++g) hits += act(g, s) == t;
        if (hits != 1) return false;
      }
    return true;
  }

 private:
  FiniteGroup group_;
  std::vector<std::string> states_;
  std::vector<std::vector<std::size_t>> act_;
};

/// Resting orientation of a die: the face value on top and the face value facing North.
struct DieOrientation {
  int up = 1;
  int north = 2;

  friend auto operator<=>(const DieOrientation&, const DieOrientation&) = default;
};

inline bool is_valid(const DieOrientation& o) {
  return o.up >= 1 && o.up <= 6 && o.north >= 1 && o.north <= 6 && o.north != o.up && o.north != 7 - o.up;
}

inline std::string to_label(const DieOrientation& o) {
  return "up=" + std::to_string(o.up) + ",north=" + std::to_string(o.north);
}

namespace detail {

using IVec3 = std::array<int, 3>;
using IMat3 = std::array<IVec3, 3>;

// Body-frame outward normals of the faces of a right-handed die: 1, 2, 3 on +x, +y, +z
// (counterclockwise about their shared corner), opposite faces summing to 7.
inline IVec3 face_normal(int face) {
  switch (face) {
    case 1: return {1, 0, 0};
    case 2: return {0, 1, 0};
    case 3: return {0, 0, 1};
    case 4: return {0, 0, -1};
    case 5: return {0, -1, 0};
    case 6: return {-1, 0, 0};
  }
  throw Error(ErrorKind::Domain, "die face must be in 1..6");
}

inline IVec3 rotate(const IMat3& m, const IVec3& v) {
  IVec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline IMat3 multiply(const IMat3& a, const IMat3& b) {
  IMat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// World frame: +z up, +y North.
inline DieOrientation orientation_of(const IMat3& body_to_world) {
  DieOrientation o{0, 0};
  for (int face = 1; face <= 6; ++face) {
    const IVec3 w = rotate(body_to_world, face_normal(face));
    if (w == IVec3{0, 0, 1}) o.up = face;
    if (w == IVec3{0, 1, 0}) o.north = face;
  }
  return o;
}

/// The 24 proper rotations of the cube as world-frame integer matrices, identity first,
/// generated by closure from quarter turns about the vertical and the East-West axis.
inline std::vector<IMat3> cube_rotations() {
  const IMat3 identity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const std::array<IMat3, 2> generators{{
      {{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}},
      {{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}},
  }};
  std::vector<IMat3> found{identity};
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& gen : generators) {
      const IMat3 next = multiply(gen, found[i]);
      if (std::find(found.begin(), found.end(), next) == found.end()) found.push_back(next);
    }
  return found;
}

struct DieModel {
  std::vector<IMat3> rotations;
  std::vector<DieOrientation> states;
  CayleyTable table;
  std::vector<std::vector<std::size_t>> act;
};

inline const DieModel& die_model() {
  static const DieModel model = [] {
    DieModel m;
    m.rotations = cube_rotations();
    const std::size_t n = m.rotations.size();
    // Reference orientation is the identity matrix: up = 3, north = 2.
    for (const auto& r : m.rotations) m.states.push_back(orientation_of(r));
    std::sort(m.states.begin(), m.states.end());
    auto rotation_index = [&](const IMat3& r) {
      return static_cast<ElementId>(std::find(m.rotations.begin(), m.rotations.end(), r) - m.rotations.begin());
    };
    auto state_index = [&](const DieOrientation& o) {
      return static_cast<std::size_t>(std::lower_bound(m.states.begin(), m.states.end(), o) - m.states.begin());
    };
    std::vector<IMat3> state_matrix(n);
    for (const auto& r : m.rotations) state_matrix[state_index(orientation_of(r))] = r;

    m.table.assign(n, std::vector<ElementId>(n));
    m.act.assign(n, std::vector<std::size_t>(n));
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) m.table[g][h] = rotation_index(multiply(m.rotations[g], m.rotations[h]));
      for (std::size_t s = 0; s < n; ++s)
        m.act[g][s] = state_index(orientation_of(multiply(m.rotations[g], state_matrix[s])));
    }
    return m;
  }();
  return model;
}

}  // namespace detail

/// The rotation group of the cube (order 24), realized as the rotations that permute the
/// resting orientations of a die.
inline FiniteGroup make_octahedral() {
  return FiniteGroup("O", detail::die_model().table);
}

/// All 24 resting orientations of the die, sorted by (up, north).
inline std::vector<DieOrientation> die_orientations() { return detail::die_model().states; }

inline GroupAction die_action() {
  const auto& model = detail::die_model();
  std::vector<std::string> labels;
  for (const auto& o : model.states) labels.push_back(to_label(o));
  return GroupAction(make_octahedral(), std::move(labels), model.act);
}

inline GroupAction coin_action() {
  return GroupAction(make_coin_group(), {"heads", "tails"}, {{0, 1}, {1, 0}});
}

}  // namespace invprob
