#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wmpg/attractor.hpp"
#include "wmpg/best_response.hpp"
#include "wmpg/product.hpp"

namespace wmpg {

struct GapResult {
  std::optional<std::size_t> gap;  // longest stretch of steps ending in an open ell-window
  std::optional<Lasso> lasso;      // consistent play with finitely many open ell-windows
  std::size_t product_states = 0;
};

/// Longest number of steps a play consistent with the Player-2 machine can go
/// (from a start, or from one open ell-window) until the next open ell-window
/// is detected. Player 1 and chance move freely. `region` must be a trap for
/// Player 1 that the machine never leaves.
inline GapResult max_open_window_gap(const NormalizedGame& g, const MealyStrategy& sigma2, std::size_t ell,
                                     const VertexSet& region) {
  if (sigma2.owner != Player::P2) throw std::invalid_argument("gap search expects a Player-2 machine");
  if (!is_trap(adversarial_projection(g.game), Player::P1, region))
    throw std::invalid_argument("region is not a trap for Player 1");
  const ProductGraph p = build_product(g, nullptr, &sigma2, Monitor::window(g, ell), region);
  const std::size_t n = p.size();
  for (std::size_t s = 0; s < n; ++s)
    if (!region.contains(p.states[s].v))
      throw std::invalid_argument("machine leaves the region at " + g.game.name(p.states[s].v));
  GapResult r;
  r.product_states = n;

  std::vector<char> quiet(n, 0);
  for (std::size_t s = 0; s < n; ++s) quiet[s] = !p.flag[s];
  const auto comps = sccs(p.succ, quiet);
  for (const auto& comp : comps) {
    bool cyclic = comp.size() > 1;
    for (std::size_t t : p.succ[comp.front()]) cyclic = cyclic || t == comp.front();
    if (!cyclic) continue;
    std::vector<char> mask(n, 0);
    for (std::size_t s : comp) mask[s] = 1;
    const std::vector<char> reach = can_reach(p.succ, mask);
    for (VertexId v : region.members()) {
      if (!reach[p.start[v]]) continue;
      r.lasso = detail::component_lasso(p, p.start[v], mask, false);
      return r;
    }
  }

  // Reverse topological order over quiet states: successors first.
  std::vector<std::size_t> dp(n, 0);
  auto through = [&](std::size_t s) {
    std::size_t best = 0;
    for (std::size_t t : p.succ[s]) best = std::max(best, quiet[t] ? dp[t] + 1 : std::size_t{1});
    return best;
  };
  for (const auto& comp : comps) dp[comp.front()] = through(comp.front());
  std::size_t gap = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (p.flag[s]) gap = std::max(gap, through(s));
  for (VertexId v : region.members()) gap = std::max(gap, dp[p.start[v]]);
  r.gap = gap;
  return r;
}

}  // namespace wmpg
