#pragma once

#include "wmpg/attractor.hpp"
#include "wmpg/product.hpp"
#include "wmpg/window.hpp"

namespace wmpg {

/// FWMP(ell) region by brute force: solve the co-Büchi game on the product of
/// the arena with the window tracker and read it off at (v, closed).
inline VertexSet cobuchi_oracle(const NormalizedGame& g, std::size_t ell) {
  require_non_stochastic(g.game, g.game.all());
  const ProductGraph p = build_product(g, nullptr, nullptr, Monitor::window(g, ell), g.game.all());
  ExplicitArena arena;
  arena.owners = p.owner;
  arena.succ = p.succ;
  arena.finish();
  VertexSet flagged(p.size());
  for (std::size_t s = 0; s < p.size(); ++s)
    if (p.flag[s]) flagged.insert(s);
  const VertexSet p2 = buchi_region(arena, Player::P2, flagged);
  VertexSet out(g.game.size());
  for (VertexId v = 0; v < g.game.size(); ++v)
    if (!p2.contains(p.start[v])) out.insert(v);
  return out;
}

}  // namespace wmpg
