#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "wmpg/wmpg.hpp"

namespace wmpg {

inline void PrintTo(const VertexSet& s, std::ostream* os) {
  *os << "{";
  for (VertexId v : s.members()) *os << " " << v;
  *os << " }";
}

}  // namespace wmpg

namespace wmpg::testing {

using gen::random_game;
using gen::RandomGameParams;

inline std::set<std::string> names(const Game& g, const VertexSet& s) {
  auto v = g.names_of(s);
  return {v.begin(), v.end()};
}

using Names = std::set<std::string>;

inline NormalizedGame norm(const Game& g) { return normalize(g, 0); }

/// Does Player 1 force, from v, a nonempty prefix of at most `steps` moves
/// with total payoff >= 0? Plain game-tree search over the integer weights.
inline bool closes_within(const NormalizedGame& g, VertexId v, std::size_t steps, const Integer& sum = 0) {
  const Game& gm = g.game;
  auto good = [&](VertexId u) {
    const Integer s = sum + g.w(v, u);
    return s >= 0 || (steps > 1 && closes_within(g, u, steps - 1, s));
  };
  const auto& succ = gm.successors(v);
  if (gm.owner(v) == Owner::P1) return std::any_of(succ.begin(), succ.end(), good);
  return std::all_of(succ.begin(), succ.end(), good);
}

/// FWMP(ell) on an ultimately periodic play, straight from the definition:
/// every window starting on the cycle closes within ell steps.
inline bool lasso_satisfies_fwmp(const NormalizedGame& g, const Lasso& l, std::size_t ell) {
  std::vector<VertexId> seq;
  const std::size_t c = l.cycle.size();
  const std::size_t reps = 2 + (ell + c - 1) / c;
  for (std::size_t r = 0; r < reps; ++r) seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
  seq.push_back(l.cycle.front());
  for (std::size_t i = 0; i < c; ++i) {
    Integer sum = 0;
    bool closed = false;
    for (std::size_t j = i; j < i + ell; ++j) {
      sum += g.w(seq[j], seq[j + 1]);
      if (sum >= 0) {
        closed = true;
        break;
      }
    }
    if (!closed) return false;
  }
  return true;
}

/// Naive attractor: repeat the one-step predecessor operator until stable.
/// Random vertices join when `random_existential` and one successor is in,
/// otherwise when all successors are in.
inline VertexSet naive_attractor(const Game& g, Player p, const VertexSet& target, bool random_existential) {
  VertexSet x = target;
  for (bool changed = true; changed;) {
    changed = false;
    for (VertexId v = 0; v < g.size(); ++v) {
      if (x.contains(v)) continue;
      const auto& s = g.successors(v);
      const bool some = std::any_of(s.begin(), s.end(), [&](VertexId u) { return x.contains(u); });
      const bool all = std::all_of(s.begin(), s.end(), [&](VertexId u) { return x.contains(u); });
      const Owner o = g.owner(v);
      const bool existential = owned_by(o, p) || (o == Owner::Random && random_existential);
      if (existential ? some : all) {
        x.insert(v);
        changed = true;
      }
    }
  }
  return x;
}

/// Memoryless machine from explicit choices by vertex name.
inline MealyStrategy choose(const Game& g, Player owner,
                            const std::vector<std::pair<std::string, std::string>>& picks) {
  std::vector<std::optional<VertexId>> c(g.size());
  for (const auto& [v, u] : picks) c[g.id(v)] = g.id(u);
  return memoryless(g, owner, c);
}

}  // namespace wmpg::testing
