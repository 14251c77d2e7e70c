#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace wmpg;
using namespace wmpg::testing;

namespace {

std::vector<VertexId> path(const Game& g, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  for (const auto& n : names) out.push_back(g.id(n));
  return out;
}

/// Random memoryless machine for `owner`.
MealyStrategy random_memoryless(const Game& g, Player owner, Rng& rng) {
  std::vector<std::optional<VertexId>> c(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    const auto& s = g.successors(v);
    c[v] = s[uniform_below(rng, s.size())];
  }
  return memoryless(g, owner, c);
}

Game single_loop(Owner o, long w) {
  GameBuilder b;
  b.vertex("v", o);
  b.edge("v", "v", w);
  return b.build();
}

}  // namespace

TEST(Annotate, WindowClosesInThreeSteps) {
  const auto g = norm(gen::fig2b());
  const auto a = annotate_windows(g, path(g.game, {"v1", "v2", "v3", "v4"}), 3);
  ASSERT_EQ(a.size(), 3u);
  ASSERT_TRUE(a[0].close);
  EXPECT_EQ(*a[0].close, 3u);
  EXPECT_FALSE(a[0].open_at_ell);
  EXPECT_EQ(describe(a[0], 3), "window@0: closes at 3");
}

TEST(Annotate, NonnegativePrefixClosesImmediately) {
  const auto g = norm(gen::fig2a());
  const auto a = annotate_windows(g, path(g.game, {"v1", "v2", "v3", "v2", "v3"}), 2);
  // v3 -> v2 pays -1 but the window at v2 already closed; only index 2 opens.
  for (std::size_t i : {0u, 1u, 3u}) EXPECT_EQ(*a[i].close, i + 1);
  EXPECT_EQ(*a[2].close, 4u);
}

TEST(Annotate, LowerBoundFamilyOpenWindow) {
  for (std::size_t ell = 2; ell <= 4; ++ell) {
    const auto g = norm(gen::g_k_ell(3, ell));
    for (std::size_t p = 1; p <= 3; ++p)
      for (std::size_t r = p; r <= 3; ++r) {
        std::vector<std::string> infix{"a" + std::to_string(p), "b" + std::to_string(r)};
        for (std::size_t c = ell - 1; c >= 1; --c) infix.push_back("c" + std::to_string(c));
        const auto a = annotate_windows(g, path(g.game, infix), ell);
        EXPECT_TRUE(a[0].open_at_ell) << p << " " << r << " " << ell;
        EXPECT_EQ(describe(a[0], ell), "window@0: open (open-at-" + std::to_string(ell) + ")");
      }
  }
}

TEST(Annotate, HorizonLimitsCloseSearch) {
  const auto g = norm(gen::fig2b());
  const auto a = annotate_windows(g, path(g.game, {"v1", "v2", "v3", "v4"}), 3, 2);
  EXPECT_FALSE(a[0].close);
  EXPECT_FALSE(a[0].open_at_ell);  // only two steps could be inspected
}

TEST(Annotate, InductivePropertyAndTrackerAgree) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = norm(random_game(seed, 6, 3, 2, Rational(1, 4)));
    Rng rng(seed);
    const MealyPlayer p1(random_memoryless(g.game, Player::P1, rng));
    const MealyPlayer p2(random_memoryless(g.game, Player::P2, rng));
    const auto play = simulate(g, p1, p2, 0, 40, seed, 1).play;
    for (std::size_t ell = 1; ell <= 4; ++ell) {
      const auto a = annotate_windows(g, play, ell);
      for (const auto& w : a) {
        if (!w.close) continue;
        for (std::size_t i = w.position + 1; i < *w.close; ++i) {
          ASSERT_TRUE(a[i].close);
          EXPECT_LE(*a[i].close, *w.close);
        }
      }
      // The oldest-window tracker flags in a prefix iff some full window there stays open.
      WindowTracker t;
      bool any_flag = false;
      for (std::size_t step = 0; step + 1 < play.size(); ++step) {
        any_flag |= t.step(ell, g.w(play[step], play[step + 1]).get_si());
        const std::size_t upto = step + 1;
        bool open = false;
        for (const auto& w : a)
          if (w.position + ell <= upto && (!w.close || *w.close > w.position + ell)) open = true;
        EXPECT_EQ(any_flag, open) << seed << " " << ell << " " << step;
      }
    }
  }
}

TEST(CobuchiOracle, Examples) {
  const auto g = norm(gen::fig2a());
  EXPECT_EQ(names(g.game, cobuchi_oracle(g, 2)), (Names{"v2", "v3"}));
  const auto loop = norm(single_loop(Owner::P2, 0));
  EXPECT_EQ(cobuchi_oracle(loop, 1), loop.game.all());
  const auto neg = norm(single_loop(Owner::P1, -1));
  EXPECT_TRUE(cobuchi_oracle(neg, 3).empty());
}

TEST(CobuchiOracle, MatchesFwmpOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto g = norm(random_game(seed, 1 + seed % 8, 3, 2));
    for (std::size_t ell = 1; ell <= 4; ++ell)
      EXPECT_EQ(cobuchi_oracle(g, ell), fwmp(g, ell).region) << "seed " << seed << " ell " << ell;
  }
}

TEST(CobuchiOracle, RejectsChance) {
  EXPECT_THROW(cobuchi_oracle(norm(gen::fig8()), 2), std::invalid_argument);
}

TEST(Chain, DeterministicChainIsZeroOne) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = norm(random_game(seed, 7, 3, 2));
    Rng rng(seed);
    const auto s1 = random_memoryless(g.game, Player::P1, rng);
    const auto s2 = random_memoryless(g.game, Player::P2, rng);
    const auto c = chain_analysis(g, s1, s2, 2);
    for (VertexId v = 0; v < g.game.size(); ++v) EXPECT_TRUE(c.flagged(v) == 0 || c.flagged(v) == 1);
  }
}

TEST(Chain, AlmostSureExampleExactValue) {
  const auto g = norm(gen::fig8());
  const auto s1 = choose(g.game, Player::P1, {{"v1", "v2"}});
  const auto c = chain_analysis(g, s1, memoryless(g.game, Player::P2), 2);
  EXPECT_EQ(c.flagged(g.game.id("v1")), Rational(9, 10));
  EXPECT_EQ(c.satisfied(g.game.id("v2")), Rational(1, 10));
  EXPECT_EQ(c.flagged(g.game.id("v3")), 0);
  EXPECT_EQ(c.flagged(g.game.id("v4")), 1);
}

TEST(Chain, NineVertexGameExactValue) {
  // From v1: 3/10 to v2 then 9/10 into the -1 loop at v5; the v3 branch ends
  // at v7 almost surely.
  const auto g = norm(gen::fig1());
  const auto s2 = choose(g.game, Player::P2, {{"v6", "v3"}});
  const auto c = chain_analysis(g, memoryless(g.game, Player::P1), s2, 1);
  EXPECT_EQ(c.flagged(g.game.id("v1")), Rational(27, 100));
  EXPECT_EQ(c.flagged(g.game.id("v3")), 0);
  EXPECT_EQ(c.flagged(g.game.id("v2")), Rational(9, 10));
}

TEST(Chain, ProbabilitiesAreHarmonic) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = norm(random_game(seed, 6, 3, 2, Rational(1, 2)));
    Rng rng(seed);
    const auto s1 = random_memoryless(g.game, Player::P1, rng);
    const auto s2 = random_memoryless(g.game, Player::P2, rng);
    const auto c = chain_analysis(g, s1, s2, 2);
    const auto& ch = c.chain;
    for (std::size_t s = 0; s < ch.size(); ++s) {
      Rational sum = 0, mass = 0;
      for (std::size_t k = 0; k < ch.succ[s].size(); ++k) {
        sum += ch.prob[s][k] * c.flag_probability[ch.succ[s][k]];
        mass += ch.prob[s][k];
      }
      EXPECT_EQ(mass, 1);
      EXPECT_EQ(sum, c.flag_probability[s]);
      EXPECT_GE(c.flag_probability[s], 0);
      EXPECT_LE(c.flag_probability[s], 1);
    }
    for (std::size_t i = 0; i < c.bsccs.size(); ++i)
      for (std::size_t s : c.bsccs[i]) EXPECT_EQ(c.flag_probability[s], c.bscc_bad[i] ? 1 : 0);
  }
}

TEST(Chain, BuchiExampleWithoutSureWinning) {
  const auto g = norm(gen::fig3_buchi());
  const VertexSet target = g.game.set({"v1"});
  const auto proj = adversarial_projection(g.game);
  ExplicitArena a;
  a.owners = proj.owners();
  for (VertexId v = 0; v < proj.size(); ++v) a.succ.push_back(proj.successors(v));
  a.finish();
  EXPECT_TRUE(buchi_region(a, Player::P1, target).empty());
  const auto c = chain_analysis(g, memoryless(g.game, Player::P1), memoryless(g.game, Player::P2),
                                Monitor::buchi(target), g.game.all());
  for (VertexId v = 0; v < g.game.size(); ++v) EXPECT_EQ(c.flagged(v), 1);
}

TEST(BestResponse, AgreesWithChainsAgainstMemorylessOpponents) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = norm(random_game(seed, 5, 2, 2, Rational(1, 3)));
    Rng rng(seed);
    for (Player fixed_owner : {Player::P1, Player::P2}) {
      const auto fixed = random_memoryless(g.game, fixed_owner, rng);
      const auto br = best_response(g, fixed, 2, g.game.all());
      const Player other = opponent(fixed_owner);
      // Worst case over memoryless opponents; they are optimal in the product MDP
      // only up to memory, so only the sound directions are checked.
      for (const auto& opp : machines_with(g.game, other, 1, g.game.all())) {
        const auto& s1 = fixed_owner == Player::P1 ? fixed : opp;
        const auto& s2 = fixed_owner == Player::P1 ? opp : fixed;
        const auto c = chain_analysis(g, s1, s2, 2);
        for (VertexId v = 0; v < g.game.size(); ++v) {
          const Rational win = fixed_owner == Player::P1 ? c.satisfied(v) : c.flagged(v);
          if (br.almost_sure.contains(v)) {
            EXPECT_EQ(win, 1) << seed;
          }
          if (br.positive.contains(v)) {
            EXPECT_GT(win, 0) << seed;
          }
        }
      }
    }
  }
}

TEST(BestResponse, WitnessLassosRefuteTheMachine) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto g = norm(random_game(seed, 6, 3, 2));
    Rng rng(seed);
    const auto m2 = random_memoryless(g.game, Player::P2, rng);
    const auto br2 = best_response(g, m2, 3, g.game.all());
    for (const auto& [v, lasso] : br2.witness) {
      EXPECT_FALSE(br2.almost_sure.contains(v));
      EXPECT_TRUE(lasso_satisfies_fwmp(g, lasso, 3)) << lasso.str(g.game);
    }
    const auto m1 = random_memoryless(g.game, Player::P1, rng);
    const auto br1 = best_response(g, m1, 3, g.game.all());
    for (const auto& [v, lasso] : br1.witness) EXPECT_FALSE(lasso_satisfies_fwmp(g, lasso, 3)) << lasso.str(g.game);
    EXPECT_EQ(br1.witness.size() + br1.almost_sure.size(), g.game.size());
  }
}

TEST(BestResponse, SynthesizedMachineOnDirFwmpCounterexample) {
  const auto g = norm(gen::fig2a());
  const auto r = fwmp(g, 2);
  const auto m = synthesize_p1_fwmp(g.game, r, 2);
  EXPECT_EQ(names(g.game, best_response(g, m, 2, g.game.all()).almost_sure), (Names{"v2", "v3"}));
}

TEST(Simulate, SameSeedSamePlay) {
  const auto g = norm(gen::fig1());
  const MealyPlayer p1(memoryless(g.game, Player::P1)), p2(memoryless(g.game, Player::P2));
  const auto a = simulate(g, p1, p2, 0, 200, 42, 2);
  const auto b = simulate(g, p1, p2, 0, 200, 42, 2);
  EXPECT_EQ(a.play, b.play);
  EXPECT_EQ(a.open_windows, b.open_windows);
  EXPECT_EQ(a.play.size(), 201u);
}

TEST(Simulate, AbsorptionFrequency) {
  const auto g = norm(gen::fig7());
  const MealyPlayer p1(memoryless(g.game, Player::P1));
  const MealyPlayer p2(choose(g.game, Player::P2, {{"v2", "v2"}}));
  const std::size_t runs = 10000;
  std::size_t at_v3 = 0;
  for (std::size_t i = 0; i < runs; ++i) at_v3 += simulate(g, p1, p2, 0, 3, i, 2).play.back() == g.game.id("v3");
  EXPECT_NEAR(static_cast<double>(at_v3) / runs, 0.8, 0.02);
}

TEST(Simulate, RandomizedPlayerStaysInTrap) {
  const auto g = norm(gen::g_k_ell(3, 3));
  const RandomizedPlayer p2(uniform_random_trap_strategy(g.game, Player::P2, g.game.all()));
  const MealyPlayer p1(memoryless(g.game, Player::P1));
  const auto r = simulate(g, p1, p2, 0, 500, 3, 3);
  EXPECT_GT(r.open_windows, 0u);
}

TEST(Gap, SingleNegativeLoop) {
  const auto g = norm(single_loop(Owner::P2, -1));
  const auto r = max_open_window_gap(g, memoryless(g.game, Player::P2), 1, g.game.all());
  ASSERT_TRUE(r.gap);
  EXPECT_EQ(*r.gap, 1u);
  EXPECT_FALSE(r.lasso);
}

TEST(Gap, AlwaysClosingMachineGivesLasso) {
  const auto g = norm(single_loop(Owner::P2, 0));
  const auto r = max_open_window_gap(g, memoryless(g.game, Player::P2), 2, g.game.all());
  EXPECT_FALSE(r.gap);
  ASSERT_TRUE(r.lasso);
  EXPECT_EQ(r.lasso->str(g.game), "(v)^w");
}

TEST(Gap, SynthesizedMachinesRespectTheBound) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t ell = 2; ell <= 3; ++ell) {
      const auto g = norm(gen::g_k_ell(k, ell));
      const auto m = synthesize_p2_fwmp(g.game, p2_layers(g, ell), ell);
      const auto r = max_open_window_gap(g, m, ell, g.game.all());
      ASSERT_TRUE(r.gap) << k << "," << ell;
      EXPECT_GE(*r.gap, ell);
      EXPECT_LT(*r.gap, m.memory_size() * g.game.size() * ell);
    }
}

TEST(Gap, RejectsRegionPlayer1CanLeave) {
  const auto g = norm(gen::fig2a());
  EXPECT_THROW(max_open_window_gap(g, memoryless(g.game, Player::P2), 2, g.game.set({"v1"})),
               std::invalid_argument);
}

TEST(Enumerate, TwoChoicesGiveTwoMachines) {
  GameBuilder b;
  b.vertex("v", Owner::P1);
  b.vertex("u", Owner::P2);
  b.edge("v", "v", 0).edge("v", "u", 0).edge("u", "v", 0);
  const Game g = b.build();
  EXPECT_EQ(enumerate_machines(g, Player::P1, 1, [](const MealyStrategy&) { return true; }), 2u);
}

TEST(Enumerate, OneMachinePerIsomorphismClass) {
  // Accessible machines with a fixed initial state have no nontrivial
  // automorphisms, so each class has (n-1)! labelled members.
  GameBuilder b;
  b.vertex("v", Owner::P1);
  b.vertex("u", Owner::P2);
  b.edge("v", "v", 0).edge("v", "u", 0).edge("u", "v", 0);
  const Game g = b.build();
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t accessible = 0;
    const std::size_t cells = n * g.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cells; ++i) combos *= n;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(g.size()));
      std::size_t c = code;
      for (std::size_t q = 0; q < n; ++q)
        for (VertexId v = 0; v < g.size(); ++v, c /= n) next[q][v] = c % n;
      std::vector<char> seen(n, 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      while (!stack.empty()) {
        const std::size_t q = stack.back();
        stack.pop_back();
        for (std::size_t t : next[q])
          if (!seen[t]) seen[t] = 1, stack.push_back(t);
      }
      if (std::all_of(seen.begin(), seen.end(), [](char x) { return x; })) ++accessible;
    }
    std::size_t fact = 1;
    for (std::size_t i = 2; i < n; ++i) fact *= i;
    const std::size_t outputs = static_cast<std::size_t>(std::pow(2, n));  // one choice point at v
    EXPECT_EQ(machines_with(g, Player::P1, n, g.all()).size(), accessible / fact * outputs) << n;
  }
}

TEST(Enumerate, RespectsRegionAndBudget) {
  const Game g = gen::fig2a();
  const VertexSet region = g.set({"v1", "v4", "v5"});
  for (const auto& m : machines_with(g, Player::P2, 1, region)) EXPECT_EQ(g.name(*m.out[0][g.id("v1")]), "v4");
  const Game big = gen::g_ell(4);
  EXPECT_THROW(enumerate_machines(big, Player::P1, 2, [](const MealyStrategy&) { return true; }, big.all(), 1000),
               BudgetExceeded);
}

TEST(Enumerate, StopsWhenVisitorDeclines) {
  const Game g = gen::g_k_ell(2, 2);
  std::size_t calls = 0;
  const std::size_t n = enumerate_machines(g, Player::P2, 2, [&](const MealyStrategy&) { return ++calls < 5; });
  EXPECT_EQ(n, 5u);
}
