#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmpg/attractor.hpp"
#include "wmpg/game.hpp"

namespace wmpg {

/// Integer extended with a -inf sentinel (absorbing for +, identity for max).
struct ExtInt {
  bool neg_inf = true;
  Integer value;

  static ExtInt minus_infinity() { return {}; }
  static ExtInt of(const Integer& x) { return ExtInt{false, x}; }

  bool nonnegative() const { return !neg_inf && value >= 0; }
  friend ExtInt operator+(const Integer& w, const ExtInt& c) {
    return c.neg_inf ? c : ExtInt::of(w + c.value);
  }
  friend bool operator<(const ExtInt& a, const ExtInt& b) {
    if (a.neg_inf) return !b.neg_inf;
    if (b.neg_inf) return false;
    return a.value < b.value;
  }
  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    return a.neg_inf == b.neg_inf && (a.neg_inf || a.value == b.value);
  }
  friend bool operator<=(const ExtInt& a, const ExtInt& b) { return !(b < a); }
  std::string str() const { return neg_inf ? "-inf" : value.get_str(); }
};

inline const ExtInt& max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

/// C[i][v] for i in 0..ell and D[i][v] (argmax at P1, argmin at P2) for i in 1..ell.
struct GoodWinTable {
  std::size_t ell = 0;
  VertexSet domain;
  std::vector<std::vector<ExtInt>> C;
  std::vector<std::vector<std::optional<VertexId>>> D;
  VertexSet region;

  const ExtInt& c(std::size_t i, VertexId v) const { return C[i][v]; }
  VertexId d(std::size_t i, VertexId v) const {
    if (!D[i][v]) throw std::logic_error("no good-window choice recorded for this vertex");
    return *D[i][v];
  }
};

enum class GoodWinMode { Corrected, ExactStep };

inline void require_non_stochastic(const Game& g, const VertexSet& domain) {
  for (VertexId v : domain.members())
    if (g.owner(v) == Owner::Random)
      throw std::invalid_argument("window solver requires a game without random vertices");
}

namespace detail {

inline GoodWinTable good_win(const NormalizedGame& ng, std::size_t ell, const VertexSet& domain,
                             GoodWinMode mode) {
  check_window_length(ell);
  const Game& g = ng.game;
  require_non_stochastic(g, domain);
  const std::size_t n = g.size();
  GoodWinTable t;
  t.ell = ell;
  t.domain = domain;
  t.C.assign(ell + 1, std::vector<ExtInt>(n));
  t.D.assign(ell + 1, std::vector<std::optional<VertexId>>(n));
  t.C[0].assign(n, ExtInt::of(0));
  const auto members = domain.members();
  for (std::size_t i = 1; i <= ell; ++i) {
    for (VertexId v : members) {
      const bool maximize = g.owner(v) == Owner::P1;
      std::optional<ExtInt> best;
      std::optional<VertexId> arg;
      for (EdgeId e : g.out_edges(v)) {
        const VertexId u = g.edge(e).to;
        if (!domain.contains(u)) continue;
        const Integer& w = ng.w(e);
        const ExtInt tail = w + t.C[i - 1][u];
        const ExtInt val = mode == GoodWinMode::Corrected ? max(ExtInt::of(w), tail) : tail;
        if (!best || (maximize ? *best < val : val < *best)) {
          best = val;
          arg = u;
        }
      }
      if (best) t.C[i][v] = *best;
      t.D[i][v] = arg;
    }
  }
  t.region = VertexSet(n);
  for (VertexId v : members) {
    bool in = t.C[ell][v].nonnegative();
    if (mode == GoodWinMode::ExactStep) {
      in = false;
      for (std::size_t i = 1; i <= ell; ++i) in = in || t.C[i][v].nonnegative();
    }
    if (in) t.region.insert(v);
  }
  return t;
}

}  // namespace detail

/// Good-window table: C_i(v) is the best total payoff P1 can ensure within
/// at least 1 and at most i steps.
inline GoodWinTable good_win(const NormalizedGame& g, std::size_t ell, const VertexSet& domain) {
  return detail::good_win(g, ell, domain, GoodWinMode::Corrected);
}
inline GoodWinTable good_win(const NormalizedGame& g, std::size_t ell) {
  return good_win(g, ell, g.game.all());
}

struct Layer {
  VertexSet winning;    // W_i
  VertexSet attractor;  // A_i
  VertexSet subgame;    // H_i
  AttractorResult attractor_detail;
  GoodWinTable table;
};

/// Recursion certificate. For fwmp the layers are (W_i, Attr_1(W_i), H_i) and
/// region is their union; for direct_wmp they are the removed Player-2
/// attractors and region is the DirFWMP region left at the end.
struct LayeredRegions {
  std::vector<Layer> layers;
  VertexSet region;
  VertexSet residual;                       // vertex set of the last subgame
  std::optional<GoodWinTable> region_table; // direct_wmp: table on the final subgame
  std::size_t k() const { return layers.size(); }
};

namespace detail {

inline LayeredRegions direct_wmp(const NormalizedGame& ng, std::size_t ell, const VertexSet& domain,
                                 bool remove_attractor) {
  const Game& g = ng.game;
  require_non_stochastic(g, domain);
  LayeredRegions out;
  VertexSet h = domain;
  for (;;) {
    GoodWinTable t = detail::good_win(ng, ell, h, GoodWinMode::Corrected);
    const VertexSet wgw = t.region;
    if (wgw == h) {
      out.region = h;
      out.residual = h;
      if (!h.empty()) out.region_table = std::move(t);
      return out;
    }
    if (!remove_attractor) {
      h = wgw;
      continue;
    }
    const VertexSet w = h - wgw;
    AttractorResult a = attractor(g, Player::P2, w, h);
    VertexSet removed = a.region;
    out.layers.push_back(Layer{w, removed, h, std::move(a), std::move(t)});
    h -= removed;
    if (wgw.empty()) {
      out.region = VertexSet(g.size());
      out.residual = h;
      return out;
    }
  }
}

}  // namespace detail

/// Winning region for DirFWMP(ell) on the subgame induced by `domain`.
inline LayeredRegions direct_wmp(const NormalizedGame& g, std::size_t ell, const VertexSet& domain) {
  return detail::direct_wmp(g, ell, domain, true);
}
inline LayeredRegions direct_wmp(const NormalizedGame& g, std::size_t ell) {
  return direct_wmp(g, ell, g.game.all());
}

/// Winning region for FWMP(ell) on the subgame induced by `domain`.
inline LayeredRegions fwmp(const NormalizedGame& ng, std::size_t ell, const VertexSet& domain) {
  check_window_length(ell);
  const Game& g = ng.game;
  require_non_stochastic(g, domain);
  LayeredRegions out;
  out.region = VertexSet(g.size());
  VertexSet rest = domain;
  while (!rest.empty()) {
    LayeredRegions d = direct_wmp(ng, ell, rest);
    if (d.region.empty()) break;
    AttractorResult a = attractor(g, Player::P1, d.region, rest);
    VertexSet added = a.region;
    out.layers.push_back(Layer{d.region, added, rest, std::move(a), std::move(*d.region_table)});
    out.region |= added;
    rest -= added;
  }
  out.residual = rest;
  return out;
}
inline LayeredRegions fwmp(const NormalizedGame& g, std::size_t ell) {
  return fwmp(g, ell, g.game.all());
}

/// FWMP(1) by reduction: subdivide every negative edge and let Player 2 try
/// to visit a subdivision node infinitely often.
inline VertexSet fwmp_window1_cobuchi(const NormalizedGame& ng, const VertexSet& domain) {
  const Game& g = ng.game;
  require_non_stochastic(g, domain);
  const std::size_t n = g.size();
  ExplicitArena arena;
  arena.owners = g.owners();
  arena.succ.assign(n, {});
  std::vector<VertexId> extra_targets;
  for (VertexId v : domain.members())
    for (EdgeId e : g.out_edges(v)) {
      const VertexId u = g.edge(e).to;
      if (!domain.contains(u)) continue;
      if (ng.w(e) < 0) {
        const VertexId mid = arena.owners.size();
        arena.owners.push_back(Owner::P1);
        arena.succ.push_back({u});
        arena.succ[v].push_back(mid);
        extra_targets.push_back(mid);
      } else {
        arena.succ[v].push_back(u);
      }
    }
  arena.finish();
  const std::size_t total = arena.size();
  VertexSet target(total, extra_targets);
  VertexSet dom(total, extra_targets);
  for (VertexId v : domain.members()) dom.insert(v);
  const VertexSet p2 = buchi_region(arena, Player::P2, target, dom);
  VertexSet out(n);
  for (VertexId v : domain.members())
    if (!p2.contains(v)) out.insert(v);
  return out;
}
inline VertexSet fwmp_window1_cobuchi(const NormalizedGame& g) {
  return fwmp_window1_cobuchi(g, g.game.all());
}

/// Non-stochastic region oracle: Player 1's winning region on the subgame
/// induced by `domain` of a game without random vertices.
class RegionOracle {
public:
  virtual ~RegionOracle() = default;
  virtual VertexSet winning_region(const NormalizedGame& g, const VertexSet& domain) const = 0;
  virtual std::string name() const = 0;
};

class FwmpOracle : public RegionOracle {
public:
  explicit FwmpOracle(std::size_t ell) : ell_(ell) { check_window_length(ell); }
  VertexSet winning_region(const NormalizedGame& g, const VertexSet& domain) const override {
    return fwmp(g, ell_, domain).region;
  }
  std::string name() const override { return "FWMP(" + std::to_string(ell_) + ")"; }
  std::size_t ell() const { return ell_; }

private:
  std::size_t ell_;
};

/// Contract: exact Player-1 region for BWMP, or Unsupported.
class BwmpSolver : public RegionOracle {
public:
  std::string name() const override { return "BWMP"; }
};

/// Decides an instance only when FWMP(|V|·(W+1)) certifies Player 1 and every
/// cycle of the remaining subgame is strictly negative (which certifies Player 2).
class CertifyingBwmpStub : public BwmpSolver {
public:
  VertexSet winning_region(const NormalizedGame& ng, const VertexSet& domain) const override {
    const Game& g = ng.game;
    Integer wmax = 0;
    for (VertexId v : domain.members())
      for (EdgeId e : g.out_edges(v))
        if (domain.contains(g.edge(e).to) && abs(ng.w(e)) > wmax) wmax = abs(ng.w(e));
    const Integer len = Integer(static_cast<unsigned long>(domain.size())) * (wmax + 1);
    if (len > Integer(static_cast<unsigned long>(kMaxWindowLength)))
      throw Unsupported("BWMP stub: certificate window too long");
    const VertexSet p1 = fwmp(ng, len.get_ui(), domain).region;
    const VertexSet rest = domain - p1;
    if (has_nonnegative_cycle(ng, rest))
      throw Unsupported("BWMP stub cannot decide this instance");
    return p1;
  }

private:
  /// Bellman-Ford on w*(m+1)+1, which is positive on a simple cycle iff the
  /// cycle's original weight is nonnegative.
  static bool has_nonnegative_cycle(const NormalizedGame& ng, const VertexSet& s) {
    const Game& g = ng.game;
    const auto members = s.members();
    const Integer factor = Integer(static_cast<unsigned long>(members.size())) + 1;
    std::vector<Integer> dist(g.size(), 0);
    for (std::size_t round = 0; round <= members.size(); ++round) {
      bool improved = false;
      for (VertexId v : members)
        for (EdgeId e : g.out_edges(v)) {
          const VertexId u = g.edge(e).to;
          if (!s.contains(u)) continue;
          const Integer cand = dist[v] + ng.w(e) * factor + 1;
          if (cand > dist[u]) {
            dist[u] = cand;
            improved = true;
          }
        }
      if (!improved) return false;
    }
    return true;
  }
};

}  // namespace wmpg
