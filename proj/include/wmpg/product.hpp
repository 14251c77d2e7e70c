#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wmpg/errors.hpp"
#include "wmpg/game.hpp"
#include "wmpg/graph.hpp"
#include "wmpg/mealy.hpp"
#include "wmpg/tracker.hpp"

namespace wmpg {

/// Flag generator for product constructions: either open ell-windows or visits
/// to a Büchi target set.
class Monitor {
public:
  static Monitor window(const NormalizedGame& g, std::size_t ell) {
    check_window_length(ell);
    Monitor m;
    m.ell_ = ell;
    m.weights_ = g.small_weights(static_cast<std::int64_t>(ell));
    return m;
  }
  static Monitor buchi(const VertexSet& target) {
    Monitor m;
    m.target_ = target;
    return m;
  }

  bool is_window() const { return ell_ != 0; }
  std::size_t ell() const { return ell_; }

  /// Advances along edge e leaving `from`; returns the flag.
  bool step(WindowTracker& t, VertexId from, EdgeId e) const {
    if (!is_window()) return target_.contains(from);
    return t.step(ell_, weights_[e]);
  }

private:
  std::size_t ell_ = 0;
  std::vector<std::int64_t> weights_;
  VertexSet target_;
};

struct ProductState {
  VertexId v = 0;
  StateId q1 = 0;
  StateId q2 = 0;
  WindowTracker tracker;
  bool flag = false;
  friend bool operator==(const ProductState&, const ProductState&) = default;
};

struct ProductStateHash {
  std::size_t operator()(const ProductState& s) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(s.v);
    mix(s.q1);
    mix(s.q2);
    mix(s.tracker.age);
    mix(static_cast<std::uint64_t>(s.tracker.deficit));
    mix(s.flag);
    return static_cast<std::size_t>(h);
  }
};

/// Explicit product of a game with up to two Mealy machines and a monitor.
/// States sit at a game vertex with machine states before reading it; a
/// state's flag records whether the step into it raised the monitor flag.
struct ProductGraph {
  std::vector<ProductState> states;
  Adjacency succ;
  std::vector<std::vector<Rational>> prob;  // aligned with succ; probability 1 when determined
  std::vector<Owner> owner;                 // owner of the state's game vertex
  std::vector<char> determined;             // successor fixed by a machine or by chance
  std::vector<char> random;                 // successor chosen by chance
  std::vector<char> flag;
  std::vector<std::size_t> start;           // per game vertex, kNoState when not a start

  std::size_t size() const { return states.size(); }

  Mdp mdp() const {
    Mdp m;
    m.random.assign(size(), 0);
    for (std::size_t s = 0; s < size(); ++s) m.random[s] = determined[s];
    m.succ = succ;
    return m;
  }
};

/// Builds the reachable product from (v, initial, initial, closed) for v in
/// `starts`. Vertices owned by a player with a machine follow its output;
/// Random vertices branch by probability; other vertices branch freely.
inline ProductGraph build_product(const NormalizedGame& ng, const MealyStrategy* m1,
                                  const MealyStrategy* m2, const Monitor& monitor,
                                  const VertexSet& starts) {
  const Game& g = ng.game;
  if (m1) require_strategy(*m1, g);
  if (m2) require_strategy(*m2, g);
  const std::uint64_t budget = state_budget();
  ProductGraph p;
  std::unordered_map<ProductState, std::size_t, ProductStateHash> index;
  std::vector<std::size_t> work;
  auto intern = [&](const ProductState& s) {
    auto [it, fresh] = index.emplace(s, p.states.size());
    if (fresh) {
      if (p.states.size() >= budget)
        throw BudgetExceeded("product exceeds " + std::to_string(budget) + " states");
      p.states.push_back(s);
      work.push_back(it->second);
    }
    return it->second;
  };
  p.start.assign(g.size(), kNoState);
  for (VertexId v : starts.members()) {
    ProductState s;
    s.v = v;
    s.q1 = m1 ? m1->initial : 0;
    s.q2 = m2 ? m2->initial : 0;
    p.start[v] = intern(s);
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> edges;
  while (!work.empty()) {
    const std::size_t id = work.back();
    work.pop_back();
    const ProductState s = p.states[id];
    const Owner o = g.owner(s.v);
    const StateId q1 = m1 ? m1->next[s.q1][s.v] : 0;
    const StateId q2 = m2 ? m2->next[s.q2][s.v] : 0;
    std::optional<VertexId> fixed;
    if (o == Owner::P1 && m1) fixed = m1->out[s.q1][s.v];
    if (o == Owner::P2 && m2) fixed = m2->out[s.q2][s.v];
    std::vector<std::pair<std::size_t, Rational>> out;
    for (EdgeId e : g.out_edges(s.v)) {
      const VertexId u = g.edge(e).to;
      if (fixed && u != *fixed) continue;
      ProductState t;
      t.v = u;
      t.q1 = q1;
      t.q2 = q2;
      t.tracker = s.tracker;
      t.flag = monitor.step(t.tracker, s.v, e);
      const Rational pr = o == Owner::Random ? g.edge(e).prob : Rational(1);
      out.emplace_back(intern(t), pr);
    }
    if (edges.size() <= id) edges.resize(p.states.size());
    edges[id] = std::move(out);
  }
  const std::size_t n = p.states.size();
  edges.resize(n);
  p.succ.assign(n, {});
  p.prob.assign(n, {});
  p.owner.assign(n, Owner::P1);
  p.determined.assign(n, 0);
  p.random.assign(n, 0);
  p.flag.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    const ProductState& st = p.states[s];
    const Owner o = g.owner(st.v);
    p.owner[s] = o;
    p.random[s] = o == Owner::Random;
    p.determined[s] = o == Owner::Random || (o == Owner::P1 && m1) || (o == Owner::P2 && m2);
    p.flag[s] = st.flag;
    for (auto& [t, pr] : edges[s]) {
      p.succ[s].push_back(t);
      p.prob[s].push_back(pr);
    }
  }
  return p;
}

}  // namespace wmpg
