#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace wmpg;
using namespace wmpg::testing;

namespace {

Game two_edge_game(const Rational& a, const Rational& b) {
  GameBuilder gb;
  gb.vertex("u", Owner::P1);
  gb.vertex("v", Owner::P2);
  gb.edge("u", "v", a).edge("v", "u", b);
  return gb.build();
}

Game without_edge(const Game& g, const std::string& from, const std::string& to) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!(g.name(e.from) == from && g.name(e.to) == to)) edges.push_back(e);
  return Game(g.names(), g.owners(), edges, g.title());
}

}  // namespace

TEST(Validate, SingleSelfLoopIsOk) {
  GameBuilder gb;
  gb.vertex("v", Owner::P1);
  gb.edge("v", "v", 0);
  EXPECT_TRUE(validate(gb.build()).ok());
}

TEST(Validate, StochasticNineVertexGameIsOk) { EXPECT_TRUE(validate(gen::fig1()).ok()); }

TEST(Validate, RemovingOnlyOutEdgeReportsDeadlock) {
  const auto r = validate(without_edge(gen::fig1(), "v9", "v8"));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, ViolationKind::Deadlock);
  EXPECT_EQ(r.violations[0].detail, "v9");
}

TEST(Validate, ReportsEveryViolation) {
  json j = json::parse(R"({"vertices":[{"id":"a","owner":"rand"},{"id":"b","owner":"p1"}],
    "edges":[{"from":"a","to":"b","weight":"0","prob":"1/3"},{"from":"a","to":"zz","weight":"0","prob":"1/3"},
             {"from":"c","to":"b","weight":"1"}]})");
  const Game g = game_from_json(j).game;
  const auto r = validate(g);
  std::set<ViolationKind> kinds;
  for (const auto& v : r.violations) kinds.insert(v.kind);
  EXPECT_TRUE(kinds.count(ViolationKind::Deadlock));              // b
  EXPECT_TRUE(kinds.count(ViolationKind::DistributionMismatch));  // 1/3 total
  EXPECT_TRUE(kinds.count(ViolationKind::DanglingEndpoint));      // zz and c
}

TEST(Validate, DuplicateEdgesRejected) {
  GameBuilder gb;
  gb.vertex("v", Owner::P1);
  gb.edge("v", "v", 0).edge("v", "v", 1);
  const auto r = validate(gb.build());
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].kind, ViolationKind::DuplicateEdge);
}

TEST(Validate, ZeroProbabilityEdgeIsMismatch) {
  GameBuilder gb;
  gb.vertex("r", Owner::Random);
  gb.vertex("a", Owner::P1);
  gb.edge("r", "a", 0, 1).edge("r", "r", 0, 0).edge("a", "a", 0);
  EXPECT_FALSE(validate(gb.build()).ok());
}

TEST(Normalize, ClearsDenominators) {
  const auto ng = normalize(two_edge_game(parse_rational("1/2"), parse_rational("-1/2")), 0);
  EXPECT_EQ(ng.scale, 2);
  EXPECT_EQ(ng.weight, (std::vector<Integer>{1, -1}));
}

TEST(Normalize, ShiftsByThreshold) {
  const auto ng = normalize(two_edge_game(1, -1), 1);
  EXPECT_EQ(ng.scale, 1);
  EXPECT_EQ(ng.weight, (std::vector<Integer>{0, -2}));
}

TEST(Normalize, ShiftThenScaleByLcm) {
  const auto ng = normalize(two_edge_game(parse_rational("1/3"), parse_rational("1/2")), parse_rational("1/6"));
  EXPECT_EQ(ng.scale, 6);
  EXPECT_EQ(ng.weight, (std::vector<Integer>{1, 2}));
}

TEST(Normalize, PreservesSignOfEveryInfixRelativeToThreshold) {
  // Independent check: mean payoff of random finite paths in the source
  // against lambda versus total payoff in the normalized game.
  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomGameParams p;
    p.seed = seed;
    p.n = 5;
    Game g0 = random_game(p);
    std::vector<Edge> edges = g0.edges();
    for (Edge& e : edges) {
      Rational w(static_cast<long>(uniform_below(rng, 13)) - 6, 1 + static_cast<long>(uniform_below(rng, 4)));
      w.canonicalize();
      e.weight = w;
    }
    const Game g(g0.names(), g0.owners(), edges);
    Rational lambda(static_cast<long>(uniform_below(rng, 9)) - 4, 1 + static_cast<long>(uniform_below(rng, 3)));
    lambda.canonicalize();
    const auto ng = normalize(g, lambda);
    for (int walk = 0; walk < 20; ++walk) {
      VertexId v = uniform_below(rng, g.size());
      Rational sum = 0;
      Integer tp = 0;
      for (int len = 1; len <= 8; ++len) {
        const auto& s = g.successors(v);
        const VertexId u = s[uniform_below(rng, s.size())];
        sum += g.weight(v, u);
        tp += ng.w(v, u);
        EXPECT_EQ(sum / len >= lambda, tp >= 0);
        v = u;
      }
    }
  }
}

TEST(Normalize, RejectsWeightsTooLargeForProducts) {
  const auto ng = normalize(two_edge_game(Rational(Integer(1) << 50), 0), 0);
  EXPECT_THROW(ng.small_weights(), BudgetExceeded);
}

TEST(Projection, RandomVertexBecomesPlayer2) {
  const Game p = adversarial_projection(gen::fig7());
  EXPECT_EQ(p.owner(p.id("v1")), Owner::P2);
  EXPECT_EQ(p.owner(p.id("v2")), Owner::P2);
  EXPECT_EQ(p.owner(p.id("v3")), Owner::P1);
  EXPECT_FALSE(p.is_stochastic());
}

TEST(Projection, IdentityWithoutChance) {
  const Game g = gen::fig2a();
  EXPECT_EQ(game_to_json(adversarial_projection(g)), game_to_json(g));
}

TEST(Projection, AlmostSureExampleV2BecomesPlayer2) {
  const Game p = adversarial_projection(gen::fig8());
  EXPECT_EQ(p.owner(p.id("v2")), Owner::P2);
}

TEST(Projection, IdempotentAndPreservesShape) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Game g = random_game(seed, 6, 3, 2, Rational(1, 2));
    const Game p = adversarial_projection(g);
    EXPECT_EQ(game_to_json(adversarial_projection(p)), game_to_json(p));
    ASSERT_EQ(p.edges().size(), g.edges().size());
    for (EdgeId e = 0; e < g.edges().size(); ++e) EXPECT_EQ(p.edge(e).weight, g.edge(e).weight);
  }
}

TEST(Restrict, KeepsSelfLoopsOnly) {
  const Game g = gen::fig8();
  const Game s = restrict(g, g.set({"v1", "v3"}));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.edges().size(), 2u);
  EXPECT_TRUE(s.edge_between(s.id("v1"), s.id("v1")));
  EXPECT_TRUE(s.edge_between(s.id("v3"), s.id("v3")));
  EXPECT_TRUE(validate(s).ok());
}

TEST(Restrict, FullSetIsIdentity) {
  const Game g = gen::fig1();
  EXPECT_EQ(game_to_json(restrict(g, g.all())), game_to_json(g));
}

TEST(Restrict, RandomVertexMayNotLoseEdges) {
  const Game g = gen::fig7();
  try {
    restrict(g, g.set({"v1", "v3"}));
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("random vertex v1 loses out-edge to v2"), std::string::npos);
  }
}

TEST(Restrict, SuccessfulRestrictionValidates) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Game g = random_game(seed, 6, 3, 2, Rational(1, 3));
    Rng rng(seed);
    VertexSet s(g.size());
    for (VertexId v = 0; v < g.size(); ++v)
      if (uniform_below(rng, 3)) s.insert(v);
    if (s.empty() || !is_subgame(g, s)) continue;
    EXPECT_TRUE(validate(restrict(g, s)).ok());
  }
}

TEST(Json, RoundTripsGames) {
  for (const Game& g : {gen::fig1(), gen::fig9(), gen::g_k_ell(2, 3)}) {
    const json j = game_to_json(g, parse_rational("1/2"));
    const GameFile f = game_from_json(j);
    EXPECT_EQ(game_to_json(f.game, f.threshold), j);
    EXPECT_EQ(f.threshold, parse_rational("1/2"));
  }
}

TEST(Json, AcceptsUnicodeMinusAndRequiresProb) {
  const json ok = json::parse(R"({"vertices":[{"id":"v","owner":"p1"}],
    "edges":[{"from":"v","to":"v","weight":"−1/2"}]})");
  EXPECT_EQ(game_from_json(ok).game.edge(0).weight, parse_rational("-1/2"));
  const json bad = json::parse(R"({"vertices":[{"id":"v","owner":"rand"}],
    "edges":[{"from":"v","to":"v","weight":"0"}]})");
  EXPECT_THROW(game_from_json(bad), std::invalid_argument);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(format_rational(parse_rational("6/4")), "3/2");
  EXPECT_EQ(format_rational(parse_rational("-3")), "-3");
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
