#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wmpg/mealy.hpp"
#include "wmpg/stochastic.hpp"
#include "wmpg/window.hpp"

namespace wmpg {

namespace detail {

/// Counter value i in 1..ell is stored as state i-1.
inline StateId counter_state(std::size_t i) { return i - 1; }

inline std::vector<std::string> counter_names(std::size_t ell) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= ell; ++i) names.push_back(std::to_string(i));
  return names;
}

inline std::size_t reset_counter(std::size_t ell) { return ell == 1 ? 1 : ell - 1; }

/// One M_dsf step at counter i on a vertex of the table's domain.
inline void dirfwmp_step(const Game& g, const GoodWinTable& t, std::size_t i, VertexId v,
                         StateId& next, std::optional<VertexId>& out) {
  const std::size_t ell = t.ell;
  const bool good = t.c(i, v).nonnegative();
  next = counter_state(good ? (i == 1 ? ell : i - 1) : reset_counter(ell));
  if (g.owner(v) == Owner::P1) out = t.d(good ? i : ell, v);
}

inline void default_row(const Game& g, Player owner, VertexId v, StateId target, StateId& next,
                        std::optional<VertexId>& out) {
  next = target;
  if (owned_by(g.owner(v), owner)) out = g.successors(v).front();
}

}  // namespace detail

/// M_dsf: ell counter states, initial ell, winning DirFWMP(ell) on the table's domain.
inline MealyStrategy synthesize_p1_dirfwmp(const Game& g, const GoodWinTable& t) {
  if (t.domain.empty() || !(t.region == t.domain))
    throw std::invalid_argument("good-window region must be the whole subgame");
  const std::size_t ell = t.ell;
  MealyStrategy m(Player::P1, ell, g.size());
  m.state_names = detail::counter_names(ell);
  m.initial = detail::counter_state(ell);
  for (std::size_t i = 1; i <= ell; ++i) {
    const StateId q = detail::counter_state(i);
    for (VertexId v = 0; v < g.size(); ++v) {
      if (t.domain.contains(v))
        detail::dirfwmp_step(g, t, i, v, m.next[q][v], m.out[q][v]);
      else
        detail::default_row(g, Player::P1, v, m.initial, m.next[q][v], m.out[q][v]);
    }
  }
  return m;
}

/// M_1^2P: attractor choice and counter reset on A_i minus W_i, the layer's
/// M_dsf on W_i.
inline MealyStrategy synthesize_p1_fwmp(const Game& g, const LayeredRegions& layers, std::size_t ell) {
  if (layers.layers.empty()) throw std::invalid_argument("no layers: Player 1 wins nowhere");
  MealyStrategy m(Player::P1, ell, g.size());
  m.state_names = detail::counter_names(ell);
  m.initial = detail::counter_state(ell);
  std::vector<const Layer*> owner_of(g.size(), nullptr);
  for (const Layer& l : layers.layers) {
    if (l.table.ell != ell) throw std::invalid_argument("layer table built for another window length");
    for (VertexId v : l.attractor.members()) owner_of[v] = &l;
  }
  for (std::size_t i = 1; i <= ell; ++i) {
    const StateId q = detail::counter_state(i);
    for (VertexId v = 0; v < g.size(); ++v) {
      const Layer* l = owner_of[v];
      if (!l) {
        detail::default_row(g, Player::P1, v, m.initial, m.next[q][v], m.out[q][v]);
      } else if (l->winning.contains(v)) {
        detail::dirfwmp_step(g, l->table, i, v, m.next[q][v], m.out[q][v]);
      } else {
        m.next[q][v] = m.initial;
        if (g.owner(v) == Owner::P1) m.out[q][v] = l->attractor_detail.strategy[v].value();
      }
    }
  }
  return m;
}

/// DirectWMP layers of Player 2's FWMP(ell)-complement region.
inline LayeredRegions p2_layers(const NormalizedGame& g, std::size_t ell, const VertexSet& domain) {
  const VertexSet p2_region = fwmp(g, ell, domain).residual;
  return direct_wmp(g, ell, p2_region);
}
inline LayeredRegions p2_layers(const NormalizedGame& g, std::size_t ell) {
  return p2_layers(g, ell, g.game.all());
}

/// M_2^2P over states (j, i) in [k] x [ell], initial (1, ell).
inline MealyStrategy synthesize_p2_fwmp(const Game& g, const LayeredRegions& layers, std::size_t ell) {
  const std::size_t k = layers.k();
  if (k == 0) throw std::invalid_argument("empty Player-2 region");
  if (!layers.region.empty())
    throw std::invalid_argument("layers leave a region where Player 1 wins DirFWMP");
  const std::size_t n = g.size();
  const VertexSet& h1 = layers.layers.front().subgame;
  std::vector<std::size_t> gamma(n, 0);  // 1-based layer index, 0 outside H_1
  for (std::size_t j = 0; j < k; ++j) {
    if (layers.layers[j].table.ell != ell)
      throw std::invalid_argument("layer table built for another window length");
    for (VertexId v : layers.layers[j].attractor.members()) gamma[v] = j + 1;
  }
  for (VertexId v : h1.members())
    if (gamma[v] == 0) throw std::invalid_argument("layers do not cover the Player-2 region");

  auto state = [&](std::size_t j, std::size_t i) -> StateId { return (j - 1) * ell + (i - 1); };
  MealyStrategy m(Player::P2, k * ell, g.size());
  for (std::size_t j = 1; j <= k; ++j)
    for (std::size_t i = 1; i <= ell; ++i)
      m.state_names[state(j, i)] = "(" + std::to_string(j) + "," + std::to_string(i) + ")";
  m.initial = state(1, ell);

  for (std::size_t j0 = 1; j0 <= k; ++j0)
    for (std::size_t i0 = 1; i0 <= ell; ++i0)
      for (VertexId v = 0; v < n; ++v) {
        StateId& next = m.next[state(j0, i0)][v];
        std::optional<VertexId>& out = m.out[state(j0, i0)][v];
        const bool p2 = g.owner(v) == Owner::P2;
        if (!h1.contains(v)) {
          detail::default_row(g, Player::P2, v, m.initial, next, out);
          continue;
        }
        std::size_t j = j0, i = i0;
        if (j >= 2 && !layers.layers[j - 1].subgame.contains(v)) {
          j = 1;
          i = ell;
        }
        const Layer& here = layers.layers[j - 1];
        if (i == ell) {
          const Layer& own = layers.layers[gamma[v] - 1];
          if (own.winning.contains(v)) {
            next = ell >= 2 ? state(gamma[v], ell - 1) : m.initial;
            if (p2) out = own.table.d(ell, v);
          } else {
            next = state(gamma[v], ell);
            if (p2) out = own.attractor_detail.strategy[v].value();
          }
        } else {
          next = i >= 2 ? state(j, i - 1) : m.initial;
          if (p2) out = here.table.d(i, v);
        }
      }
  return m;
}

/// Drops transitions that no deviation-free play can take and replaces them by
/// the initial state's behaviour; outputs become epsilon outside Player 2's
/// vertices of the stochastic game. `domain` is the subgame the machine wins on.
inline MealyStrategy reset_transform(const MealyStrategy& m, const Game& g, const VertexSet& domain) {
  if (m.owner != Player::P2) throw std::invalid_argument("reset transform expects a Player-2 machine");
  if (!m.is_total()) throw std::invalid_argument("reset transform needs a total machine");
  if (m.vertex_count() != g.size()) throw std::invalid_argument("machine does not match the game");
  const std::size_t states = m.memory_size();
  const std::size_t n = g.size();
  std::vector<std::vector<char>> reach(states, std::vector<char>(n, 0));
  std::vector<std::pair<StateId, VertexId>> work;
  auto mark = [&](StateId q, VertexId v) {
    if (!reach[q][v]) {
      reach[q][v] = 1;
      work.emplace_back(q, v);
    }
  };
  for (VertexId v = 0; v < n; ++v) mark(m.initial, v);
  while (!work.empty()) {
    auto [q, v] = work.back();
    work.pop_back();
    const StateId q2 = m.next[q][v];
    if (g.owner(v) == Owner::P1) {
      for (VertexId u : g.successors(v))
        if (domain.contains(u)) mark(q2, u);
    } else if (m.out[q][v] && domain.contains(*m.out[q][v])) {
      mark(q2, *m.out[q][v]);
    }
  }
  std::vector<char> keep(states, 0);
  keep[m.initial] = 1;
  for (StateId q = 0; q < states; ++q)
    for (VertexId v = 0; v < n; ++v)
      if (reach[q][v]) keep[m.next[q][v]] = 1;
  std::vector<StateId> renum(states, kNoState);
  MealyStrategy r;
  r.owner = Player::P2;
  for (StateId q = 0; q < states; ++q)
    if (keep[q]) {
      renum[q] = r.state_names.size();
      r.state_names.push_back(m.state_names[q]);
    }
  r.initial = renum[m.initial];
  r.next.assign(r.state_names.size(), std::vector<StateId>(n, kNoState));
  r.out.assign(r.state_names.size(), std::vector<std::optional<VertexId>>(n));
  for (StateId q = 0; q < states; ++q) {
    if (!keep[q]) continue;
    for (VertexId v = 0; v < n; ++v) {
      const StateId src = reach[q][v] ? q : m.initial;
      r.next[renum[q]][v] = renum[m.next[src][v]];
      if (g.owner(v) == Owner::P2) r.out[renum[q]][v] = m.out[src][v];
    }
  }
  return r;
}
inline MealyStrategy reset_transform(const MealyStrategy& m, const Game& g) {
  return reset_transform(m, g, g.all());
}

/// Combines per-layer inner machines: inner machine i on W_i, memoryless
/// positive-attractor choice on Z_i minus W_i. Inner machines are renumbered
/// so their initial state is state 0; the shared state carries over between
/// layers.
inline MealyStrategy assemble_positive(const Game& g, Player owner,
                                       const std::vector<QualitativeLayer>& layers,
                                       const std::vector<MealyStrategy>& inner) {
  if (layers.size() != inner.size())
    throw std::invalid_argument("layer/strategy count mismatch");
  if (layers.empty()) throw std::invalid_argument("nothing to assemble");
  const std::size_t n = g.size();
  std::size_t states = 1;
  std::vector<std::vector<StateId>> to_shared(inner.size()), from_shared(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const MealyStrategy& im = inner[i];
    if (im.owner != owner) throw std::invalid_argument("inner machine has the wrong owner");
    states = std::max(states, im.memory_size());
    to_shared[i].assign(im.memory_size(), kNoState);
    to_shared[i][im.initial] = 0;
    from_shared[i].push_back(im.initial);
    for (StateId q = 0; q < im.memory_size(); ++q)
      if (q != im.initial) {
        to_shared[i][q] = from_shared[i].size();
        from_shared[i].push_back(q);
      }
  }
  std::vector<std::size_t> layer_of(n, layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i)
    for (VertexId v : layers[i].attractor.members()) layer_of[v] = i;

  MealyStrategy m(owner, states, n);
  for (StateId s = 0; s < states; ++s) m.state_names[s] = "s" + std::to_string(s);
  m.initial = 0;
  for (StateId s = 0; s < states; ++s)
    for (VertexId v = 0; v < n; ++v) {
      const bool owned = owned_by(g.owner(v), owner);
      const std::size_t li = layer_of[v];
      if (li == layers.size()) {
        detail::default_row(g, owner, v, 0, m.next[s][v], m.out[s][v]);
      } else if (layers[li].winning.contains(v)) {
        const MealyStrategy& im = inner[li];
        const StateId q = s < from_shared[li].size() ? from_shared[li][s] : im.initial;
        m.next[s][v] = to_shared[li][im.next[q][v]];
        if (owned) m.out[s][v] = im.out[q][v];
      } else {
        m.next[s][v] = 0;
        if (owned) m.out[s][v] = layers[li].attractor_detail.strategy[v].value();
      }
    }
  return m;
}

/// Player 1 positive-winning machine on the subgame induced by `domain`.
inline MealyStrategy synthesize_p1_positive(const NormalizedGame& g, std::size_t ell,
                                            const VertexSet& domain) {
  const FwmpOracle solver(ell);
  const QualitativeResult r = pos_win(g, solver, domain);
  if (r.layers.empty()) throw std::invalid_argument("Player 1 wins positively nowhere");
  const NormalizedGame projected = adversarial_projection(g);
  std::vector<MealyStrategy> inner;
  for (const QualitativeLayer& l : r.layers)
    inner.push_back(synthesize_p1_fwmp(projected.game, fwmp(projected, ell, l.subgame), ell));
  return assemble_positive(g.game, Player::P1, r.layers, inner);
}
inline MealyStrategy synthesize_p1_positive(const NormalizedGame& g, std::size_t ell) {
  return synthesize_p1_positive(g, ell, g.game.all());
}

/// Player 1 almost-sure machine: the positive machine of the almost-sure subgame.
inline MealyStrategy synthesize_p1_almost_sure(const NormalizedGame& g, std::size_t ell) {
  const FwmpOracle solver(ell);
  const VertexSet region = as_win(g, solver).region;
  if (region.empty()) throw std::invalid_argument("Player 1 wins almost surely nowhere");
  return synthesize_p1_positive(g, ell, region);
}

/// Player 2 almost-sure machine on a subgame where Player 1 wins nowhere in
/// the projection: M_2^2P on the projection, then the reset transform.
inline MealyStrategy synthesize_p2_almost_sure_on(const NormalizedGame& g, std::size_t ell,
                                                  const VertexSet& domain) {
  const NormalizedGame projected = adversarial_projection(g);
  const LayeredRegions layers = direct_wmp(projected, ell, domain);
  if (!layers.region.empty())
    throw std::invalid_argument("Player 1 wins part of the projected subgame");
  return reset_transform(synthesize_p2_fwmp(projected.game, layers, ell), g.game, domain);
}

inline MealyStrategy synthesize_p2_almost_sure(const NormalizedGame& g, std::size_t ell) {
  const FwmpOracle solver(ell);
  const VertexSet region = as_win_p2(g, solver);
  if (region.empty()) throw std::invalid_argument("Player 2 wins almost surely nowhere");
  return synthesize_p2_almost_sure_on(g, ell, region);
}

inline MealyStrategy synthesize_p2_positive(const NormalizedGame& g, std::size_t ell) {
  const FwmpOracle solver(ell);
  const QualitativeResult r = as_win(g, solver);
  if (r.aswin_trace.empty()) throw std::invalid_argument("Player 2 wins positively nowhere");
  std::vector<MealyStrategy> inner;
  for (const QualitativeLayer& l : r.aswin_trace)
    inner.push_back(synthesize_p2_almost_sure_on(g, ell, l.winning));
  return assemble_positive(g.game, Player::P2, r.aswin_trace, inner);
}

}  // namespace wmpg
