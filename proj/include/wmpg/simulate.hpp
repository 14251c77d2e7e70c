#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wmpg/attractor.hpp"
#include "wmpg/mealy.hpp"
#include "wmpg/random.hpp"
#include "wmpg/tracker.hpp"

namespace wmpg {

/// Stateful strategy object driven by the simulator. observe() reads the
/// current vertex and returns the chosen successor at owned vertices.
class Agent {
public:
  virtual ~Agent() = default;
  virtual Player owner() const = 0;
  virtual void reset() = 0;
  virtual VertexId choose(const Game& g, VertexId v, Rng& rng) = 0;
  /// Memory update on a vertex the player does not control.
  virtual void observe(const Game& g, VertexId v) = 0;
  virtual std::unique_ptr<Agent> clone() const = 0;
};

/// Plays a Mealy machine.
class MealyPlayer : public Agent {
public:
  explicit MealyPlayer(MealyStrategy m) : m_(std::move(m)), q_(m_.initial) {}

  Player owner() const override { return m_.owner; }
  void reset() override { q_ = m_.initial; }
  VertexId choose(const Game&, VertexId v, Rng&) override {
    const VertexId out = *m_.out[q_][v];
    q_ = m_.next[q_][v];
    return out;
  }
  void observe(const Game&, VertexId v) override { q_ = m_.next[q_][v]; }
  std::unique_ptr<Agent> clone() const override { return std::make_unique<MealyPlayer>(*this); }
  StateId state() const { return q_; }

private:
  MealyStrategy m_;
  StateId q_;
};

/// Memoryless randomized strategy: a distribution over successors per owned vertex.
struct RandomizedStrategy {
  Player owner = Player::P1;
  std::map<VertexId, std::vector<std::pair<VertexId, Rational>>> dist;
};

/// Uniform choice among the successors inside `trap` at every owned vertex
/// of `trap`; lowest successor elsewhere. `trap` must be a trap for the
/// opponent, so the owner can keep the token inside.
inline RandomizedStrategy uniform_random_trap_strategy(const Game& g, Player owner, const VertexSet& trap) {
  if (!is_trap(g, opponent(owner), trap))
    throw std::invalid_argument("set is not a trap for the opponent");
  RandomizedStrategy s;
  s.owner = owner;
  for (VertexId v = 0; v < g.size(); ++v) {
    if (!owned_by(g.owner(v), owner)) continue;
    std::vector<VertexId> inside;
    for (VertexId u : g.successors(v))
      if (!trap.contains(v) || trap.contains(u)) inside.push_back(u);
    if (inside.empty()) throw std::invalid_argument("owner cannot stay in the trap at " + g.name(v));
    if (!trap.contains(v)) inside.resize(1);
    for (VertexId u : inside) {
      Rational p(1, static_cast<unsigned long>(inside.size()));
      p.canonicalize();
      s.dist[v].emplace_back(u, p);
    }
  }
  return s;
}

/// Replaces the strategy owner's vertices by Random vertices following the
/// strategy's distributions, giving the game left for the other player.
inline Game apply_randomized(const Game& g, const RandomizedStrategy& s) {
  std::vector<Owner> owners = g.owners();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    auto it = s.dist.find(e.from);
    if (it == s.dist.end()) {
      edges.push_back(e);
      continue;
    }
    owners[e.from] = Owner::Random;
    for (const auto& [u, p] : it->second)
      if (u == e.to) edges.push_back(Edge{e.from, e.to, e.weight, p});
  }
  return Game(g.names(), owners, edges, g.title());
}

class RandomizedPlayer : public Agent {
public:
  explicit RandomizedPlayer(RandomizedStrategy s) : s_(std::move(s)) {}
  Player owner() const override { return s_.owner; }
  void reset() override {}
  VertexId choose(const Game&, VertexId v, Rng& rng) override {
    const auto& d = s_.dist.at(v);
    std::vector<Rational> probs;
    for (const auto& [u, p] : d) probs.push_back(p);
    return d[sample_index(rng, probs)].first;
  }
  void observe(const Game&, VertexId) override {}
  std::unique_ptr<Agent> clone() const override { return std::make_unique<RandomizedPlayer>(*this); }

private:
  RandomizedStrategy s_;
};

struct PlayRecord {
  std::vector<VertexId> play;  // steps + 1 vertices
  std::vector<WindowAnnotation> windows;
  std::size_t open_windows = 0;  // positions flagged open-at-ell
};

/// Chance move at a Random vertex by exact cumulative comparison.
inline VertexId sample_successor(const Game& g, VertexId v, Rng& rng) {
  std::vector<Rational> probs;
  for (EdgeId e : g.out_edges(v)) probs.push_back(g.edge(e).prob);
  return g.edge(g.out_edges(v)[sample_index(rng, probs)]).to;
}

/// Samples `steps` moves from `start`. Players are used in place, so stateful
/// ones (e.g. phase strategies) carry over between calls unless reset.
inline std::vector<VertexId> sample_play(const Game& g, Agent& p1, Agent& p2, VertexId start,
                                         std::size_t steps, Rng& rng) {
  std::vector<VertexId> play{start};
  play.reserve(steps + 1);
  VertexId v = start;
  for (std::size_t i = 0; i < steps; ++i) {
    VertexId next;
    switch (g.owner(v)) {
      case Owner::P1:
        next = p1.choose(g, v, rng);
        p2.observe(g, v);
        break;
      case Owner::P2:
        next = p2.choose(g, v, rng);
        p1.observe(g, v);
        break;
      default:
        next = sample_successor(g, v, rng);
        p1.observe(g, v);
        p2.observe(g, v);
    }
    if (!g.edge_between(v, next))
      throw std::logic_error("strategy chose a non-edge " + g.name(v) + " -> " + g.name(next));
    play.push_back(next);
    v = next;
  }
  return play;
}

/// Reproducible seeded play with window bookkeeping (windows are searched
/// for a close at most `ell` steps ahead).
inline PlayRecord simulate(const NormalizedGame& g, const Agent& p1, const Agent& p2, VertexId start,
                           std::size_t steps, std::uint64_t seed, std::size_t ell) {
  Rng rng(seed);
  auto a = p1.clone(), b = p2.clone();
  a->reset();
  b->reset();
  PlayRecord r;
  r.play = sample_play(g.game, *a, *b, start, steps, rng);
  r.windows = annotate_windows(g, r.play, ell, ell);
  for (const auto& w : r.windows) r.open_windows += w.open_at_ell;
  return r;
}

}  // namespace wmpg
