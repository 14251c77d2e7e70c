#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace wmpg;
using namespace wmpg::testing;

TEST(PositiveAttractor, Player1ReachesSafeSelfLoop) {
  const Game g = gen::fig7();
  EXPECT_EQ(names(g, positive_attractor(g, Player::P1, g.set({"v3"})).region), (Names{"v1", "v3"}));
}

TEST(PositiveAttractor, Player2ReachesNegativeLoop) {
  const Game g = gen::fig8();
  EXPECT_EQ(names(g, positive_attractor(g, Player::P2, g.set({"v4"})).region), (Names{"v2", "v4"}));
}

TEST(PositiveAttractor, WholeSetHasRankZero) {
  const Game g = gen::fig1();
  const auto r = positive_attractor(g, Player::P1, g.all());
  EXPECT_EQ(r.region, g.all());
  for (VertexId v = 0; v < g.size(); ++v) EXPECT_EQ(r.rank[v], 0u);
}

TEST(Attractor, Player2IntoNegativeCycle) {
  const Game g = gen::fig2a();
  EXPECT_EQ(names(g, attractor(g, Player::P2, g.set({"v4", "v5"})).region), (Names{"v1", "v4", "v5"}));
}

TEST(Attractor, EmptyTarget) {
  const Game g = gen::fig2a();
  EXPECT_TRUE(attractor(g, Player::P2, VertexSet(g.size())).region.empty());
}

TEST(Attractor, LowerBoundFamilyFunnelsIntoC) {
  const Game g = gen::g_k_ell(4, 3);
  EXPECT_EQ(attractor(g, Player::P2, g.set({"c1", "c2"})).region, g.all());
}

TEST(Trap, WholeArena) {
  const Game g = gen::fig1();
  EXPECT_TRUE(is_trap(g, Player::P1, g.all()));
  EXPECT_TRUE(is_trap(g, Player::P2, g.all()));
}

TEST(Trap, Player1CycleTrapsPlayer2) {
  const Game g = gen::fig2a();
  EXPECT_TRUE(is_trap(g, Player::P2, g.set({"v2", "v3"})));
  EXPECT_FALSE(is_trap(g, Player::P1, g.set({"v1", "v2"})));
}

TEST(Trap, SelfLoopTrapsPlayer1) {
  const Game g = gen::fig8();
  EXPECT_TRUE(is_trap(g, Player::P1, g.set({"v4"})));
}

TEST(Bscc, SingleAbsorbingState) {
  EXPECT_EQ(bottom_sccs({{0}}), (std::vector<std::vector<std::size_t>>{{0}}));
}

TEST(Bscc, TwoStateCycle) {
  EXPECT_EQ(bottom_sccs({{1}, {0}}), (std::vector<std::vector<std::size_t>>{{0, 1}}));
}

TEST(Bscc, PositiveExampleUnderSelfLoopChoice) {
  const NormalizedGame ng = norm(gen::fig7());
  const Game& g = ng.game;
  const auto s1 = memoryless(g, Player::P1);
  const auto s2 = choose(g, Player::P2, {{"v2", "v2"}});
  const ProductGraph c = build_product(ng, &s1, &s2, Monitor::buchi(VertexSet(g.size())), g.all());
  std::set<Names> found;
  for (const auto& comp : bsccs(c)) {
    Names n;
    for (std::size_t s : comp) n.insert(g.name(c.states[s].v));
    found.insert(n);
  }
  EXPECT_EQ(found, (std::set<Names>{{"v2"}, {"v3"}}));
}

TEST(Bscc, EveryStateReachesABottomComponent) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Game g = random_game(seed, 8, 2);
    Adjacency succ(g.size());
    for (VertexId v = 0; v < g.size(); ++v) succ[v] = g.successors(v);
    std::vector<char> bottom(g.size(), 0);
    for (const auto& comp : bottom_sccs(succ))
      for (std::size_t s : comp) bottom[s] = 1;
    const auto reach = can_reach(succ, bottom);
    for (VertexId v = 0; v < g.size(); ++v) EXPECT_TRUE(reach[v]);
  }
}

TEST(AttractorProperties, AgreeWithNaiveFixpointOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Game g = random_game(seed, 8, 3, 2, Rational(1, 3));
    Rng rng(seed + 1000);
    VertexSet t(g.size());
    for (VertexId v = 0; v < g.size(); ++v)
      if (uniform_below(rng, 4) == 0) t.insert(v);
    for (Player p : {Player::P1, Player::P2}) {
      const auto pos = positive_attractor(g, p, t);
      const auto cls = attractor(g, p, t);
      EXPECT_EQ(pos.region, naive_attractor(g, p, t, true));
      EXPECT_EQ(cls.region, naive_attractor(g, p, t, false));
      // The complement of a positive attractor is a trap for the player.
      EXPECT_TRUE(is_trap(g, p, g.all() - pos.region));
      for (VertexId v = 0; v < g.size(); ++v) {
        if (!pos.region.contains(v)) {
          EXPECT_EQ(pos.rank[v], kNoRank);
          continue;
        }
        EXPECT_LE(pos.rank[v], g.size());
        EXPECT_EQ(pos.rank[v] == 0, t.contains(v));
        if (pos.strategy[v]) {
          EXPECT_TRUE(g.edge_between(v, *pos.strategy[v]));
          EXPECT_EQ(pos.rank[*pos.strategy[v]] + 1, pos.rank[v]);
          // Lowest-id rank-decreasing successor.
          for (VertexId u : g.successors(v))
            if (pos.rank[u] + 1 == pos.rank[v]) {
              EXPECT_EQ(u, *pos.strategy[v]);
              break;
            }
        }
      }
    }
  }
}

TEST(AttractorProperties, MonotoneInTarget) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = random_game(seed, 8, 3, 2, Rational(1, 4));
    Rng rng(seed);
    VertexSet t(g.size());
    for (VertexId v = 0; v < g.size(); ++v)
      if (uniform_below(rng, 5) == 0) t.insert(v);
    VertexSet bigger = t;
    bigger.insert(uniform_below(rng, g.size()));
    EXPECT_TRUE(positive_attractor(g, Player::P1, t).region.subset_of(
        positive_attractor(g, Player::P1, bigger).region));
  }
}

TEST(AttractorProperties, CoincideWithoutChance) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = random_game(seed, 7);
    const VertexSet t(g.size(), {0});
    EXPECT_EQ(positive_attractor(g, Player::P2, t).region, attractor(g, Player::P2, t).region);
  }
}

TEST(Mec, FindsEndComponentsOfSmallMdp) {
  // 0 -> 1, 1 -> {0, 2}, 2 -> 2.
  Mdp m;
  m.random = {0, 0, 0};
  m.succ = {{1}, {0, 2}, {2}};
  auto mecs = maximal_end_components(m, {1, 1, 1});
  std::sort(mecs.begin(), mecs.end());
  EXPECT_EQ(mecs, (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
  // A random state must keep all its successors inside.
  m.random = {0, 1, 0};
  mecs = maximal_end_components(m, {1, 1, 1});
  EXPECT_EQ(mecs, (std::vector<std::vector<std::size_t>>{{2}}));
  EXPECT_TRUE(maximal_end_components(m, {1, 1, 0}).empty());
}

TEST(Mec, AlmostSureReachability) {
  Mdp m;
  m.random = {1, 0, 0};
  m.succ = {{1, 2}, {0}, {2}};
  EXPECT_EQ(almost_sure_reach(m, {0, 0, 1}), (std::vector<char>{1, 1, 1}));
  m.succ = {{1, 2}, {1}, {2}};
  EXPECT_EQ(almost_sure_reach(m, {0, 0, 1}), (std::vector<char>{0, 0, 1}));
}
