#pragma once

#include <map>
#include <vector>

#include "wmpg/graph.hpp"
#include "wmpg/linalg.hpp"
#include "wmpg/product.hpp"

namespace wmpg {

struct ChainAnalysis {
  ProductGraph chain;
  std::vector<std::vector<std::size_t>> bsccs;
  std::vector<char> bscc_bad;               // contains a flagged state
  std::vector<Rational> flag_probability;   // per product state: P(flags infinitely often)

  /// Probability that flags occur infinitely often from (v, initial states).
  const Rational& flagged(VertexId v) const { return flag_probability.at(chain.start.at(v)); }
  /// For a window monitor: probability of FWMP(ell) from v.
  Rational satisfied(VertexId v) const { return Rational(1) - flagged(v); }
};

/// Bottom SCCs of the chain's underlying graph.
inline std::vector<std::vector<std::size_t>> bsccs(const ProductGraph& chain) {
  return bottom_sccs(chain.succ);
}

/// Product Markov chain of the game under two fixed machines; every state
/// gets the exact probability of visiting flagged states infinitely often.
inline ChainAnalysis chain_analysis(const NormalizedGame& g, const MealyStrategy& s1,
                                    const MealyStrategy& s2, const Monitor& monitor,
                                    const VertexSet& starts) {
  if (s1.owner != Player::P1 || s2.owner != Player::P2)
    throw std::invalid_argument("chain analysis expects a Player-1 and a Player-2 machine");
  ChainAnalysis r;
  r.chain = build_product(g, &s1, &s2, monitor, starts);
  const ProductGraph& c = r.chain;
  const std::size_t n = c.size();
  r.bsccs = bsccs(c);
  std::vector<char> bad_bottom(n, 0), good_bottom(n, 0);
  for (const auto& comp : r.bsccs) {
    bool bad = false;
    for (std::size_t s : comp) bad = bad || c.flag[s];
    r.bscc_bad.push_back(bad);
    for (std::size_t s : comp) (bad ? bad_bottom : good_bottom)[s] = 1;
  }
  const std::vector<char> reach_bad = can_reach(c.succ, bad_bottom);
  const std::vector<char> reach_good = can_reach(c.succ, good_bottom);
  r.flag_probability.assign(n, Rational(0));
  std::map<std::size_t, std::size_t> unknown;
  for (std::size_t s = 0; s < n; ++s) {
    if (!reach_bad[s]) continue;
    if (!reach_good[s]) r.flag_probability[s] = 1;
    else unknown.emplace(s, unknown.size());
  }
  if (!unknown.empty()) {
    const std::size_t m = unknown.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> b(m, Rational(0));
    for (auto [s, row] : unknown) {
      a[row][row] += 1;
      for (std::size_t k = 0; k < c.succ[s].size(); ++k) {
        const std::size_t t = c.succ[s][k];
        const Rational& p = c.prob[s][k];
        if (auto it = unknown.find(t); it != unknown.end()) a[row][it->second] -= p;
        else b[row] += p * r.flag_probability[t];
      }
    }
    const std::vector<Rational> x = solve_exact(a, b);
    for (auto [s, row] : unknown) r.flag_probability[s] = x[row];
  }
  return r;
}

inline ChainAnalysis chain_analysis(const NormalizedGame& g, const MealyStrategy& s1,
                                    const MealyStrategy& s2, std::size_t ell) {
  return chain_analysis(g, s1, s2, Monitor::window(g, ell), g.game.all());
}

}  // namespace wmpg
