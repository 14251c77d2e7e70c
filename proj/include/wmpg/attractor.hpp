#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "wmpg/game.hpp"

namespace wmpg {

inline constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();

struct AttractorResult {
  VertexSet region;
  std::vector<std::size_t> rank;                  // kNoRank outside the region
  std::vector<std::optional<VertexId>> strategy;  // owned vertices in region minus target
};

/// Arena with explicit owners and successor lists, used for product games.
struct ExplicitArena {
  std::vector<Owner> owners;
  std::vector<std::vector<VertexId>> succ;
  std::vector<std::vector<VertexId>> pred;

  std::size_t size() const { return owners.size(); }
  Owner owner(VertexId v) const { return owners[v]; }
  const std::vector<VertexId>& successors(VertexId v) const { return succ[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return pred[v]; }

  void finish() {
    pred.assign(size(), {});
    for (VertexId v = 0; v < size(); ++v)
      for (VertexId u : succ[v]) pred[u].push_back(v);
  }
};

namespace detail {

/// Layered worklist fixpoint. A vertex the player chooses at joins as soon as
/// one successor is in; any other vertex joins once its counter of outside
/// successors drops to zero. Only successors inside `domain` are considered.
template <class Arena>
AttractorResult attract(const Arena& a, Player p, const VertexSet& target, const VertexSet& domain,
                        bool random_existential) {
  const std::size_t n = a.size();
  AttractorResult r{VertexSet(n), std::vector<std::size_t>(n, kNoRank),
                    std::vector<std::optional<VertexId>>(n)};
  auto existential = [&](VertexId v) {
    const Owner o = a.owner(v);
    return owned_by(o, p) || (o == Owner::Random && random_existential);
  };
  std::vector<std::size_t> counter(n, 0);
  for (VertexId v : domain.members())
    for (VertexId u : a.successors(v))
      if (domain.contains(u)) ++counter[v];

  std::vector<VertexId> frontier;
  for (VertexId v : target.members())
    if (domain.contains(v)) {
      r.region.insert(v);
      r.rank[v] = 0;
      frontier.push_back(v);
    }
  for (std::size_t layer = 0; !frontier.empty(); ++layer) {
    std::vector<VertexId> next;
    for (VertexId u : frontier)
      for (VertexId v : a.predecessors(u)) {
        if (!domain.contains(v) || r.region.contains(v)) continue;
        if (existential(v) || --counter[v] == 0) {
          r.region.insert(v);
          r.rank[v] = layer + 1;
          next.push_back(v);
        }
      }
    for (VertexId v : next) {
      if (!owned_by(a.owner(v), p)) continue;
      for (VertexId u : a.successors(v))
        if (domain.contains(u) && r.rank[u] == layer) {
          r.strategy[v] = u;
          break;
        }
    }
    frontier = std::move(next);
  }
  return r;
}

}  // namespace detail

/// Least fixpoint of PosPre_p: Random vertices count as the player's own.
template <class Arena>
AttractorResult positive_attractor(const Arena& a, Player p, const VertexSet& target,
                                   const VertexSet& domain) {
  return detail::attract(a, p, target, domain, true);
}
template <class Arena>
AttractorResult positive_attractor(const Arena& a, Player p, const VertexSet& target) {
  return positive_attractor(a, p, target, VertexSet::full(a.size()));
}

/// Classical attractor: Random vertices count as the opponent's.
template <class Arena>
AttractorResult attractor(const Arena& a, Player p, const VertexSet& target, const VertexSet& domain) {
  return detail::attract(a, p, target, domain, false);
}
template <class Arena>
AttractorResult attractor(const Arena& a, Player p, const VertexSet& target) {
  return attractor(a, p, target, VertexSet::full(a.size()));
}

/// True iff `p` cannot force the token out of S (within `domain`).
template <class Arena>
bool is_trap(const Arena& a, Player p, const VertexSet& s, const VertexSet& domain) {
  for (VertexId v : s.members()) {
    const bool opponent_vertex = owned_by(a.owner(v), opponent(p));
    bool some_in = false;
    bool all_in = true;
    for (VertexId u : a.successors(v)) {
      if (!domain.contains(u)) continue;
      if (s.contains(u)) some_in = true;
      else all_in = false;
    }
    if (opponent_vertex ? !some_in : !all_in) return false;
  }
  return true;
}
template <class Arena>
bool is_trap(const Arena& a, Player p, const VertexSet& s) {
  return is_trap(a, p, s, VertexSet::full(a.size()));
}

/// Region (within `domain`) from which `p` visits `target` infinitely often.
/// Classical fixpoint; Random vertices are treated as the opponent's.
template <class Arena>
VertexSet buchi_region(const Arena& a, Player p, const VertexSet& target, VertexSet domain) {
  for (;;) {
    const AttractorResult reach = attractor(a, p, target & domain, domain);
    const VertexSet escape = domain - reach.region;
    if (escape.empty()) return domain;
    domain -= attractor(a, opponent(p), escape, domain).region;
  }
}
template <class Arena>
VertexSet buchi_region(const Arena& a, Player p, const VertexSet& target) {
  return buchi_region(a, p, target, VertexSet::full(a.size()));
}

}  // namespace wmpg
