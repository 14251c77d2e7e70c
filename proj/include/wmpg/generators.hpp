#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wmpg/game.hpp"
#include "wmpg/mealy.hpp"
#include "wmpg/random.hpp"

namespace wmpg::gen {

namespace detail {

inline Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Stochastic game with nine vertices (Fig. 1).
inline Game fig1() {
  using detail::q;
  GameBuilder b("fig1");
  b.vertex("v1", Owner::Random);
  b.vertex("v2", Owner::Random);
  b.vertex("v3", Owner::Random);
  b.vertex("v4", Owner::P1);
  b.vertex("v5", Owner::P1);
  b.vertex("v6", Owner::P2);
  b.vertex("v7", Owner::P1);
  b.vertex("v8", Owner::P1);
  b.vertex("v9", Owner::P1);
  b.edge("v1", "v2", 0, q(3, 10)).edge("v1", "v3", 0, q(7, 10));
  b.edge("v2", "v4", 0, q(1, 10)).edge("v2", "v5", 0, q(9, 10));
  b.edge("v3", "v6", 0, q(2, 10)).edge("v3", "v7", 0, q(8, 10));
  b.edge("v4", "v4", 0).edge("v5", "v5", -1);
  b.edge("v6", "v3", -1).edge("v6", "v6", 0);
  b.edge("v7", "v7", 0);
  b.edge("v8", "v2", 0).edge("v8", "v9", -1).edge("v9", "v8", 0);
  return b.build();
}

/// DirFWMP counterexample, window 2 (Fig. 2a).
inline Game fig2a() {
  GameBuilder b("fig2a");
  b.vertex("v1", Owner::P2);
  for (const char* v : {"v2", "v3", "v4", "v5"}) b.vertex(v, Owner::P1);
  b.edge("v1", "v2", 1).edge("v1", "v4", 1);
  b.edge("v2", "v3", 1).edge("v3", "v2", -1);
  b.edge("v4", "v5", -1).edge("v5", "v4", -1);
  return b.build();
}

/// GoodWin counterexample, window 3 (Fig. 2b).
inline Game fig2b() {
  GameBuilder b("fig2b");
  b.vertex("v1", Owner::P1);
  b.vertex("v2", Owner::P2);
  for (const char* v : {"v3", "v4", "v5", "v6", "v7", "v8"}) b.vertex(v, Owner::P1);
  b.edge("v1", "v2", -1);
  b.edge("v2", "v3", -1).edge("v2", "v5", 2);
  b.edge("v3", "v4", 3).edge("v4", "v4", 0);
  b.edge("v5", "v6", -2).edge("v6", "v7", 0).edge("v7", "v8", 2).edge("v8", "v8", 0);
  return b.build();
}

/// Büchi example without the positive-to-sure property (Fig. 3); target {v1}.
inline Game fig3_buchi() {
  using detail::q;
  GameBuilder b("fig3_buchi");
  b.vertex("v1", Owner::P1);
  b.vertex("v2", Owner::Random);
  b.vertex("v3", Owner::P1);
  b.edge("v1", "v2", 0);
  b.edge("v2", "v1", 0, q(1, 2)).edge("v2", "v3", 0, q(1, 2));
  b.edge("v3", "v2", 0);
  return b.build();
}

/// Window-close detection fragment (Fig. 4). The figure's dashed edges are
/// closed through an extra Player-1 hub x: x -> u1, u3 with +5 and
/// u5, u6, v3, v6 -> x with 0.
inline Game fig4_fragment() {
  GameBuilder b("fig4_fragment");
  for (const char* v : {"u1", "u2", "u3"}) b.vertex(v, Owner::P1);
  for (const char* v : {"u4", "u5", "u6"}) b.vertex(v, Owner::P2);
  for (const char* v : {"v", "v1", "v2", "v3", "v4", "v5", "v6", "x"}) b.vertex(v, Owner::P1);
  b.edge("x", "u1", 5).edge("x", "u3", 5);
  b.edge("u1", "u2", -2).edge("u2", "v", 0);
  b.edge("u3", "u4", -2).edge("u4", "u5", 3).edge("u4", "u6", 1);
  b.edge("u5", "v", -4);
  b.edge("v", "v1", 0).edge("v1", "v2", 0).edge("v2", "v3", 4);
  b.edge("v", "v4", 3).edge("v4", "v5", 0).edge("v5", "v6", 0);
  for (const char* v : {"u5", "u6", "v3", "v6"}) b.edge(v, "x", 0);
  return b.build();
}

/// Positive winning example (Fig. 7a).
inline Game fig7() {
  using detail::q;
  GameBuilder b("fig7");
  b.vertex("v1", Owner::Random);
  b.vertex("v2", Owner::P2);
  b.vertex("v3", Owner::P1);
  b.edge("v1", "v2", 0, q(2, 10)).edge("v1", "v3", 0, q(8, 10));
  b.edge("v2", "v1", -1).edge("v2", "v2", 0);
  b.edge("v3", "v3", 0);
  return b.build();
}

/// Almost-sure winning example (Fig. 8).
inline Game fig8() {
  using detail::q;
  GameBuilder b("fig8");
  b.vertex("v1", Owner::P1);
  b.vertex("v2", Owner::Random);
  b.vertex("v3", Owner::P2);
  b.vertex("v4", Owner::P1);
  b.edge("v1", "v1", -1).edge("v1", "v2", 0);
  b.edge("v2", "v3", 0, q(1, 10)).edge("v2", "v4", 0, q(9, 10));
  b.edge("v3", "v3", 0).edge("v4", "v4", -1);
  return b.build();
}

/// Reset-strategy running example, objective complement of FWMP(3) (Fig. 9).
inline Game fig9() {
  using detail::q;
  GameBuilder b("fig9");
  b.vertex("v1", Owner::P1);
  b.vertex("v2", Owner::Random);
  b.vertex("v3", Owner::Random);
  b.vertex("v4", Owner::P2);
  b.vertex("v5", Owner::P2);
  b.vertex("v6", Owner::Random);
  b.vertex("v7", Owner::P2);
  b.vertex("v8", Owner::P2);
  const Rational half = q(1, 2);
  b.edge("v1", "v2", 0).edge("v1", "v3", 0);
  b.edge("v2", "v4", -1, half).edge("v2", "v5", 0, half);
  b.edge("v3", "v4", 0, half).edge("v3", "v5", -1, half);
  b.edge("v4", "v6", 0).edge("v5", "v6", 0);
  b.edge("v6", "v7", 0, half).edge("v6", "v8", 0, half);
  b.edge("v7", "v8", 0);
  b.edge("v8", "v1", 0).edge("v8", "v8", 0);
  return b.build();
}

/// Player-2 machine of Fig. 10 on the adversarial projection of fig9().
/// The figure lists only the transitions that matter; every other (q, v)
/// entry copies q0's behaviour on v.
inline MealyStrategy fig10_machine(const Game& g) {
  MealyStrategy m(Player::P2, 6, g.size());
  const Game proj = adversarial_projection(g);
  auto set = [&](StateId q, const char* v, StateId to, const char* out) {
    const VertexId id = g.id(v);
    m.next[q][id] = to;
    if (out) m.out[q][id] = g.id(out);
  };
  set(0, "v1", 1, nullptr);
  set(0, "v8", 0, "v1");
  set(0, "v2", 2, "v4");
  set(0, "v3", 2, "v5");
  set(0, "v4", 3, "v6");
  set(0, "v5", 3, "v6");
  set(0, "v6", 4, "v8");
  set(0, "v7", 4, "v8");
  set(1, "v2", 2, "v4");
  set(1, "v3", 2, "v5");
  set(2, "v4", 3, "v6");
  set(2, "v5", 3, "v6");
  set(3, "v6", 4, "v8");
  set(4, "v7", 5, "v8");
  set(4, "v8", 0, "v1");
  set(5, "v8", 5, "v8");
  for (StateId q = 1; q < 6; ++q)
    for (VertexId v = 0; v < g.size(); ++v)
      if (m.next[q][v] == kNoState) {
        m.next[q][v] = m.next[0][v];
        m.out[q][v] = m.out[0][v];
      }
  require_strategy(m, proj);
  return m;
}

/// Player-1 memory lower-bound family G_ell (Fig. 5): Player 2 at u0 picks
/// u_i with payoff -i; Player 1 must then take the i-th of ell-1 paths from
/// u_{ell-1} to v, whose i-th edge pays +i.
inline Game g_ell(std::size_t ell) {
  if (ell < 2) throw std::invalid_argument("G_ell needs ell >= 2");
  GameBuilder b("G_" + std::to_string(ell));
  auto u = [](std::size_t i) { return "u" + std::to_string(i); };
  auto w = [](std::size_t i, std::size_t j) {
    return "w" + std::to_string(i) + "_" + std::to_string(j);
  };
  b.vertex(u(0), Owner::P2);
  for (std::size_t i = 1; i < ell; ++i) b.vertex(u(i), Owner::P1);
  for (std::size_t i = 1; i < ell; ++i)
    for (std::size_t j = 1; j + 1 < ell; ++j) b.vertex(w(i, j), Owner::P1);
  b.vertex("v", Owner::P1);
  for (std::size_t i = 1; i < ell; ++i) b.edge(u(0), u(i), -static_cast<long>(i));
  for (std::size_t i = 1; i + 1 < ell; ++i) b.edge(u(i), u(i + 1), 0);
  for (std::size_t i = 1; i < ell; ++i) {
    // Path i: u_{ell-1} = p_0 -> p_1 -> ... -> p_{ell-1} = v, edge k pays +i when k == i.
    auto node = [&](std::size_t k) { return k == 0 ? u(ell - 1) : k + 1 == ell ? std::string("v") : w(i, k); };
    for (std::size_t k = 1; k < ell; ++k) b.edge(node(k - 1), node(k), k == i ? static_cast<long>(i) : 0);
  }
  b.edge("v", u(0), 0);
  return b.build();
}

/// Player-2 memory lower-bound family G_{k,ell} (Fig. 6), 2k + ell - 1 vertices.
inline Game g_k_ell(std::size_t k, std::size_t ell) {
  if (k < 1 || ell < 2) throw std::invalid_argument("G_{k,ell} needs k >= 1 and ell >= 2");
  GameBuilder b("G_" + std::to_string(k) + "_" + std::to_string(ell));
  auto a = [](std::size_t p) { return "a" + std::to_string(p); };
  auto bb = [](std::size_t p) { return "b" + std::to_string(p); };
  auto c = [](std::size_t p) { return "c" + std::to_string(p); };
  for (std::size_t p = 1; p <= k; ++p) b.vertex(a(p), Owner::P1);
  for (std::size_t p = 1; p <= k; ++p) b.vertex(bb(p), Owner::P2);
  for (std::size_t p = 1; p < ell; ++p) b.vertex(c(p), Owner::P1);
  for (std::size_t p = 1; p <= k; ++p)
    for (std::size_t r = p; r <= k; ++r) b.edge(a(p), bb(r), -1);
  for (std::size_t p = 2; p <= k; ++p) b.edge(a(p), a(p - 1), 1).edge(a(p), bb(p - 1), 1);
  for (std::size_t p = 1; p <= k; ++p) b.edge(bb(p), c(ell - 1), 0).edge(bb(p), a(p), 1);
  for (std::size_t p = 2; p < ell; ++p) b.edge(c(p), c(p - 1), 0);
  b.edge(c(1), a(k), 1).edge(c(1), bb(k), 1);
  return b.build();
}

/// Good choice chi(u, b_r) in G_{k,ell} (Table 1): c_{ell-1} after a_p with
/// p <= r, otherwise a_r.
inline std::string good_choice(std::size_t ell, const std::string& u, std::size_t r) {
  if (u[0] == 'a' && std::stoul(u.substr(1)) <= r) return "c" + std::to_string(ell - 1);
  return "a" + std::to_string(r);
}

/// Winning (k+1)-state Player-2 machine on G_{k,ell}: one state per vertex of
/// A ∪ {c1}, remembering the last such vertex, playing its good choices.
inline MealyStrategy good_choice_machine(const Game& g, std::size_t k, std::size_t ell) {
  MealyStrategy m(Player::P2, k + 1, g.size());
  std::vector<std::string> memo;
  for (std::size_t p = 1; p <= k; ++p) memo.push_back("a" + std::to_string(p));
  memo.push_back("c1");
  m.state_names = {};
  for (const auto& s : memo) m.state_names.push_back("q_" + s);
  m.initial = k;
  for (StateId q = 0; q <= k; ++q) {
    for (VertexId v = 0; v < g.size(); ++v) {
      const std::string& name = g.name(v);
      auto it = std::find(memo.begin(), memo.end(), name);
      m.next[q][v] = it == memo.end() ? q : static_cast<StateId>(it - memo.begin());
      if (name[0] == 'b') {
        const std::size_t r = std::stoul(name.substr(1));
        const VertexId prev = g.id(memo[q]);
        m.out[q][v] = g.edge_between(prev, v) ? g.id(good_choice(ell, memo[q], r))
                                              : g.id("a" + std::to_string(r));
      }
    }
  }
  require_strategy(m, g);
  return m;
}

struct RandomGameParams {
  std::uint64_t seed = 0;
  std::size_t n = 8;
  std::size_t min_degree = 1;
  std::size_t max_degree = 3;
  long min_weight = -2;
  long max_weight = 2;
  Rational random_fraction = 0;  // share of vertices owned by chance
  std::size_t max_prob_weight = 4;  // probabilities are k_i / sum k_j with 1 <= k_i <= this
};

/// Seeded random arena: distinct successors, no deadlocks, full-support
/// rational distributions at Random vertices.
inline Game random_game(const RandomGameParams& p) {
  if (p.n < 1) throw std::invalid_argument("random game needs n >= 1");
  if (p.min_degree < 1 || p.min_degree > p.max_degree || p.min_weight > p.max_weight)
    throw std::invalid_argument("invalid random game parameters");
  Rng rng(p.seed);
  const Integer num = p.random_fraction.get_num(), den = p.random_fraction.get_den();
  std::vector<std::string> names;
  std::vector<Owner> owners;
  for (std::size_t v = 0; v < p.n; ++v) {
    names.push_back("v" + std::to_string(v + 1));
    const std::uint64_t r = uniform_below(rng, den.get_ui());
    if (r < num.get_ui()) owners.push_back(Owner::Random);
    else owners.push_back(uniform_below(rng, 2) ? Owner::P2 : Owner::P1);
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < p.n; ++v) {
    const std::size_t hi = std::min(p.max_degree, p.n);
    const std::size_t lo = std::min(p.min_degree, hi);
    const std::size_t deg = lo + uniform_below(rng, hi - lo + 1);
    std::vector<VertexId> pool(p.n);
    for (std::size_t i = 0; i < p.n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < deg; ++i) std::swap(pool[i], pool[i + uniform_below(rng, p.n - i)]);
    std::vector<VertexId> targets(pool.begin(), pool.begin() + static_cast<long>(deg));
    std::sort(targets.begin(), targets.end());
    std::vector<long> share;
    long total = 0;
    for (std::size_t i = 0; i < deg; ++i) {
      share.push_back(1 + static_cast<long>(uniform_below(rng, p.max_prob_weight)));
      total += share.back();
    }
    for (std::size_t i = 0; i < deg; ++i) {
      const long span = p.max_weight - p.min_weight + 1;
      const long w = p.min_weight + static_cast<long>(uniform_below(rng, static_cast<std::uint64_t>(span)));
      const Rational pr = owners[v] == Owner::Random ? detail::q(share[i], total) : Rational(0);
      edges.push_back(Edge{v, targets[i], Rational(w), pr});
    }
  }
  return Game(names, owners, edges, "random_" + std::to_string(p.seed));
}

inline Game random_game(std::uint64_t seed, std::size_t n, std::size_t max_degree = 3,
                        long max_abs_weight = 2, const Rational& random_fraction = 0) {
  RandomGameParams p;
  p.seed = seed;
  p.n = n;
  p.max_degree = max_degree;
  p.min_weight = -max_abs_weight;
  p.max_weight = max_abs_weight;
  p.random_fraction = random_fraction;
  return random_game(p);
}

/// Builds a figure or family game by its family name.
inline Game build(const std::string& family, std::size_t k = 0, std::size_t ell = 0,
                  std::uint64_t seed = 0, std::size_t n = 8) {
  if (family == "fig1") return fig1();
  if (family == "fig2a") return fig2a();
  if (family == "fig2b") return fig2b();
  if (family == "fig3_buchi") return fig3_buchi();
  if (family == "fig4_fragment") return fig4_fragment();
  if (family == "fig7") return fig7();
  if (family == "fig8") return fig8();
  if (family == "fig9_reset" || family == "fig9") return fig9();
  if (family == "gl" || family == "G_ell") return g_ell(ell);
  if (family == "gkl" || family == "G_k_ell") return g_k_ell(k, ell);
  if (family == "random") return random_game(seed, n);
  throw std::invalid_argument("unknown family '" + family + "'");
}

}  // namespace wmpg::gen
