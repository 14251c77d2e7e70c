#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "wmpg/graph.hpp"
#include "wmpg/product.hpp"

namespace wmpg {

/// A play prefix followed by a cycle repeated forever (vertex sequences).
struct Lasso {
  std::vector<VertexId> prefix;
  std::vector<VertexId> cycle;

  std::string str(const Game& g) const {
    std::string s;
    for (VertexId v : prefix) s += g.name(v) + " ";
    s += "(";
    for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? " " : "") + g.name(cycle[i]);
    return s + ")^w";
  }
};

struct BestResponseResult {
  Player fixed_owner = Player::P1;
  VertexSet almost_sure;  // fixed machine wins with probability 1 (surely without chance)
  VertexSet positive;     // fixed machine wins with positive probability
  std::map<VertexId, Lasso> witness;  // opponent play where the fixed machine fails to win surely
  std::size_t product_states = 0;
};

namespace detail {

inline std::vector<std::size_t> bfs_path(const ProductGraph& p, std::size_t from,
                                         const std::vector<char>& goal, const std::vector<char>& allowed,
                                         bool require_step) {
  std::vector<std::size_t> parent(p.size(), kNoState);
  std::deque<std::size_t> q;
  std::vector<char> seen(p.size(), 0);
  auto visit = [&](std::size_t s, std::size_t par) {
    if (seen[s] || (!allowed.empty() && !allowed[s])) return false;
    seen[s] = 1;
    parent[s] = par;
    q.push_back(s);
    return true;
  };
  if (require_step) {
    for (std::size_t t : p.succ[from]) visit(t, from);
  } else {
    visit(from, kNoState);
  }
  while (!q.empty()) {
    const std::size_t s = q.front();
    q.pop_front();
    if (goal[s]) {
      std::vector<std::size_t> path{s};
      for (std::size_t cur = s;;) {
        const std::size_t par = parent[cur];
        if (par == kNoState) break;
        path.push_back(par);
        if (require_step && par == from) break;
        cur = par;
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t t : p.succ[s]) visit(t, s);
  }
  return {};
}

/// Lasso from `start` into `component` whose cycle passes a flagged state when
/// `through_flag`, staying inside `component` on the cycle.
inline Lasso component_lasso(const ProductGraph& p, std::size_t start,
                             const std::vector<char>& component, bool through_flag) {
  std::vector<char> anchor(p.size(), 0);
  for (std::size_t s = 0; s < p.size(); ++s)
    anchor[s] = component[s] && (!through_flag || p.flag[s]);
  const auto lead = bfs_path(p, start, anchor, {}, false);
  const std::size_t a = lead.back();
  std::vector<char> back(p.size(), 0);
  back[a] = 1;
  const auto loop = bfs_path(p, a, back, component, true);
  Lasso l;
  for (std::size_t i = 0; i + 1 < lead.size(); ++i) l.prefix.push_back(p.states[lead[i]].v);
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) l.cycle.push_back(p.states[loop[i]].v);
  return l;
}

}  // namespace detail

/// Decides, per start vertex, whether `fixed` wins its side of the window
/// objective against every strategy of the opponent (Player 1: FWMP, i.e.
/// finitely many flags; Player 2: the complement).
inline BestResponseResult best_response(const NormalizedGame& g, const MealyStrategy& fixed,
                                        const Monitor& monitor, const VertexSet& starts) {
  const bool p1 = fixed.owner == Player::P1;
  const ProductGraph p = build_product(g, p1 ? &fixed : nullptr, p1 ? nullptr : &fixed, monitor, starts);
  const Mdp mdp = p.mdp();
  const std::size_t n = p.size();
  std::vector<char> everything(n, 1), safe(n, 0);
  for (std::size_t s = 0; s < n; ++s) safe[s] = !p.flag[s];

  // End components the opponent wants to reach.
  std::vector<char> target(n, 0);
  bool through_flag = false;
  if (p1) {
    through_flag = true;
    for (const auto& mec : maximal_end_components(mdp, everything)) {
      bool has_flag = false;
      for (std::size_t s : mec) has_flag = has_flag || p.flag[s];
      if (has_flag)
        for (std::size_t s : mec) target[s] = 1;
    }
  } else {
    for (const auto& mec : maximal_end_components(mdp, safe))
      for (std::size_t s : mec) target[s] = 1;
  }
  const std::vector<char> opp_positive = can_reach(p.succ, target);
  const std::vector<char> opp_sure = almost_sure_reach(mdp, target);

  BestResponseResult r;
  r.fixed_owner = fixed.owner;
  r.almost_sure = VertexSet(g.game.size());
  r.positive = VertexSet(g.game.size());
  r.product_states = n;
  for (VertexId v : starts.members()) {
    const std::size_t s = p.start[v];
    if (!opp_positive[s]) r.almost_sure.insert(v);
    if (!opp_sure[s]) r.positive.insert(v);
    if (opp_positive[s]) r.witness[v] = detail::component_lasso(p, s, target, through_flag);
  }
  return r;
}

inline BestResponseResult best_response(const NormalizedGame& g, const MealyStrategy& fixed,
                                        std::size_t ell, const VertexSet& starts) {
  return best_response(g, fixed, Monitor::window(g, ell), starts);
}

}  // namespace wmpg
