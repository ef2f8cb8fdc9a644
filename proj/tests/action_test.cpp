#include "invprob/action.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "invprob/oracle.hpp"

namespace invprob {
namespace {

TEST(DieOrientation, ExactlyTwentyFourValid) {
  int valid = 0;
  for (int up = 0; up <= 7; ++up)
    for (int north = 0; north <= 7; ++north) valid += is_valid({up, north});
  EXPECT_EQ(valid, 24);
  EXPECT_TRUE(is_valid({1, 2}));
  EXPECT_FALSE(is_valid({1, 6}));
  EXPECT_FALSE(is_valid({3, 3}));
}

TEST(DieOrientation, BuiltStatesMatchBruteForce) {
  auto brute = oracle::enumerate_die_orientations();
  std::sort(brute.begin(), brute.end());
  EXPECT_EQ(die_orientations(), brute);
}

TEST(DieAction, TwentyFourStatesSimplyTransitive) {
  const auto action = die_action();
  ASSERT_EQ(action.states().size(), 24u);
  EXPECT_EQ(action.group().order(), 24u);
  for (std::size_t s = 0; s < 24; ++s)
    for (std::size_t t = 0; t < 24; ++t) {
      int hits = 0;
      for (ElementId g = 0; g < 24; ++g) hits += action.act(g, s) == t;
      EXPECT_EQ(hits, 1) << action.states()[s] << " -> " << action.states()[t];
    }
  EXPECT_TRUE(action.is_simply_transitive());
}

TEST(DieAction, IdentityFixesReferenceOrientation) {
  const auto action = die_action();
  const auto& states = action.states();
  const auto it = std::find(states.begin(), states.end(), "up=1,north=2");
  ASSERT_NE(it, states.end());
  const auto s = static_cast<std::size_t>(it - states.begin());
  EXPECT_EQ(action.act(action.group().identity(), s), s);
}

TEST(DieAction, QuarterTurnsAboutVerticalKeepTheUpFace) {
  // The stabilizer of the up face is the cyclic group C4 of quarter turns.
  const auto action = die_action();
  const auto faces = die_orientations();
  for (std::size_t s = 0; s < 24; ++s) {
    std::set<int> norths;
    std::size_t stabilizer = 0;
    for (ElementId g = 0; g < 24; ++g) {
      const auto t = action.act(g, s);
      if (faces[t].up == faces[s].up) {
        ++stabilizer;
        norths.insert(faces[t].north);
      }
    }
    EXPECT_EQ(stabilizer, 4u);
    EXPECT_EQ(norths.size(), 4u);
  }
}

TEST(DieAction, RightHandedFaceNumbering) {
  // 1, 2, 3 run counterclockwise around their shared corner: n1 x n2 = n3.
  const auto n1 = detail::face_normal(1), n2 = detail::face_normal(2), n3 = detail::face_normal(3);
  const detail::IVec3 cross{n1[1] * n2[2] - n1[2] * n2[1], n1[2] * n2[0] - n1[0] * n2[2], n1[0] * n2[1] - n1[1] * n2[0]};
  EXPECT_EQ(cross, n3);
  for (int f = 1; f <= 6; ++f) {
    const auto a = detail::face_normal(f), b = detail::face_normal(7 - f);
    EXPECT_EQ(a[0] + b[0], 0);
    EXPECT_EQ(a[1] + b[1], 0);
    EXPECT_EQ(a[2] + b[2], 0);
  }
}

TEST(DieAction, QuarterTurnsCycleTheSideFaces) {
  const auto faces = die_orientations();
  const auto action = die_action();
  const auto start = static_cast<std::size_t>(std::find(faces.begin(), faces.end(), DieOrientation{1, 2}) - faces.begin());
  std::set<std::pair<int, int>> reachable;
  for (ElementId g = 0; g < 24; ++g) {
    const auto t = faces[action.act(g, start)];
    if (t.up == 1) reachable.insert({t.up, t.north});
  }
  EXPECT_EQ(reachable, (std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}, {1, 5}}));
}

TEST(CoinAction, TwoStatesSwappedByFlip) {
  const auto coin = coin_action();
  EXPECT_EQ(coin.act(1, 0), 1u);
  EXPECT_EQ(coin.act(1, 1), 0u);
  EXPECT_TRUE(coin.is_simply_transitive());
}

TEST(GroupAction, RejectsIncompatibleTables) {
  // Identity moves a state.
  EXPECT_THROW(GroupAction(make_coin_group(), {"a", "b"}, {{1, 0}, {1, 0}}), Error);
  // Not a homomorphism: C3 acting on two points cannot swap them.
  EXPECT_THROW(GroupAction(make_cyclic(3), {"a", "b"}, {{0, 1}, {1, 0}, {1, 0}}), Error);
}

TEST(GroupAction, OrbitsOfTrivialAction) {
  const GroupAction still(make_coin_group(), {"a", "b"}, {{0, 1}, {0, 1}});
  EXPECT_FALSE(still.is_transitive());
  EXPECT_EQ(still.orbit(1), std::vector<std::size_t>{1});
}

}  // namespace
}  // namespace invprob
