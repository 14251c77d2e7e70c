#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmpg/errors.hpp"
#include "wmpg/rational.hpp"
#include "wmpg/vertex_set.hpp"

namespace wmpg {

enum class Owner : std::uint8_t { P1, P2, Random };
enum class Player : std::uint8_t { P1, P2 };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
inline bool owned_by(Owner o, Player p) {
  return (o == Owner::P1 && p == Player::P1) || (o == Owner::P2 && p == Player::P2);
}
inline const char* to_string(Owner o) {
  switch (o) {
    case Owner::P1: return "p1";
    case Owner::P2: return "p2";
    default: return "rand";
  }
}
inline const char* to_string(Player p) { return p == Player::P1 ? "p1" : "p2"; }

using EdgeId = std::size_t;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  Rational weight;
  Rational prob;  // zero unless `from` is a Random vertex
};

/// Immutable weighted arena. Edges whose endpoints are out of range are kept
/// so that validate() can report them; adjacency ignores them.
class Game {
public:
  Game() = default;
  Game(std::vector<std::string> names, std::vector<Owner> owners, std::vector<Edge> edges,
       std::string title = {})
      : names_(std::move(names)), owners_(std::move(owners)), edges_(std::move(edges)),
        title_(std::move(title)) {
    if (names_.size() != owners_.size()) throw std::invalid_argument("names/owners size mismatch");
    const std::size_t n = owners_.size();
    out_.assign(n, {});
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.from < n && ed.to < n) out_[ed.from].push_back(e);
    }
    for (VertexId v = 0; v < n; ++v) {
      auto& out = out_[v];
      std::stable_sort(out.begin(), out.end(),
                       [&](EdgeId a, EdgeId b) { return edges_[a].to < edges_[b].to; });
      for (EdgeId e : out) {
        const VertexId t = edges_[e].to;
        if (succ_[v].empty() || succ_[v].back() != t) {
          succ_[v].push_back(t);
          pred_[t].push_back(v);
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      std::sort(pred_[v].begin(), pred_[v].end());
      index_.emplace(names_[v], v);
    }
  }

  std::size_t size() const { return owners_.size(); }
  Owner owner(VertexId v) const { return owners_[v]; }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Owner>& owners() const { return owners_; }
  const std::string& title() const { return title_; }

  std::optional<VertexId> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  VertexId id(const std::string& name) const {
    auto v = find(name);
    if (!v) throw std::invalid_argument("unknown vertex '" + name + "'");
    return *v;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  /// Out-edges of v sorted by target id.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  /// Distinct successors of v in increasing id order.
  const std::vector<VertexId>& successors(VertexId v) const { return succ_[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return pred_[v]; }

  std::optional<EdgeId> edge_between(VertexId u, VertexId v) const {
    for (EdgeId e : out_[u])
      if (edges_[e].to == v) return e;
    return std::nullopt;
  }
  const Rational& weight(VertexId u, VertexId v) const {
    auto e = edge_between(u, v);
    if (!e) throw std::invalid_argument("no edge " + names_[u] + " -> " + names_[v]);
    return edges_[*e].weight;
  }

  bool is_stochastic() const {
    return std::any_of(owners_.begin(), owners_.end(), [](Owner o) { return o == Owner::Random; });
  }

  VertexSet all() const { return VertexSet::full(size()); }
  VertexSet set(std::initializer_list<const char*> names) const {
    VertexSet s(size());
    for (const char* n : names) s.insert(id(n));
    return s;
  }
  std::vector<std::string> names_of(const VertexSet& s) const {
    std::vector<std::string> out;
    for (VertexId v : s.members()) out.push_back(names_[v]);
    return out;
  }

private:
  std::vector<std::string> names_;
  std::vector<Owner> owners_;
  std::vector<Edge> edges_;
  std::string title_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<VertexId>> succ_;
  std::vector<std::vector<VertexId>> pred_;
  std::map<std::string, VertexId> index_;
};

/// Incremental construction by vertex name.
class GameBuilder {
public:
  explicit GameBuilder(std::string title = {}) : title_(std::move(title)) {}

  VertexId vertex(const std::string& name, Owner owner) {
    if (index_.count(name)) throw std::invalid_argument("duplicate vertex '" + name + "'");
    index_[name] = names_.size();
    names_.push_back(name);
    owners_.push_back(owner);
    return names_.size() - 1;
  }
  GameBuilder& edge(const std::string& from, const std::string& to, const Rational& weight,
                    const Rational& prob = 0) {
    edges_.push_back(Edge{lookup(from), lookup(to), weight, prob});
    return *this;
  }
  GameBuilder& edge(const std::string& from, const std::string& to, long weight) {
    return edge(from, to, Rational(weight));
  }
  Game build() const { return Game(names_, owners_, edges_, title_); }

private:
  VertexId lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex '" + name + "'");
    return it->second;
  }
  std::string title_;
  std::vector<std::string> names_;
  std::vector<Owner> owners_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId> index_;
};

enum class ViolationKind { Deadlock, DistributionMismatch, DanglingEndpoint, DuplicateEdge };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::Deadlock: return "deadlock";
    case ViolationKind::DistributionMismatch: return "distribution mismatch";
    case ViolationKind::DanglingEndpoint: return "dangling edge endpoint";
    default: return "duplicate edge";
  }
}

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    if (ok()) return "OK";
    std::string s;
    for (const auto& v : violations) {
      if (!s.empty()) s += "; ";
      s += std::string(to_string(v.kind)) + ": " + v.detail;
    }
    return s;
  }
};

inline ValidationReport validate(const Game& g) {
  ValidationReport r;
  const std::size_t n = g.size();
  auto vname = [&](VertexId v) { return v < n ? g.name(v) : "#" + std::to_string(v); };
  std::vector<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : g.edges()) {
    if (e.from >= n || e.to >= n) {
      r.violations.push_back({ViolationKind::DanglingEndpoint, vname(e.from) + " -> " + vname(e.to)});
      continue;
    }
    seen.emplace_back(e.from, e.to);
    if (g.owner(e.from) != Owner::Random && e.prob != 0)
      r.violations.push_back({ViolationKind::DistributionMismatch,
                              "probability on edge leaving non-random vertex " + g.name(e.from)});
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i] == seen[i - 1])
      r.violations.push_back(
          {ViolationKind::DuplicateEdge, g.name(seen[i].first) + " -> " + g.name(seen[i].second)});
  for (VertexId v = 0; v < n; ++v) {
    if (g.out_edges(v).empty()) {
      r.violations.push_back({ViolationKind::Deadlock, g.name(v)});
      continue;
    }
    if (g.owner(v) != Owner::Random) continue;
    Rational total = 0;
    for (EdgeId e : g.out_edges(v)) {
      if (g.edge(e).prob <= 0)
        r.violations.push_back({ViolationKind::DistributionMismatch,
                                "non-positive probability on " + g.name(v) + " -> " +
                                    g.name(g.edge(e).to)});
      total += g.edge(e).prob;
    }
    if (total != 1)
      r.violations.push_back({ViolationKind::DistributionMismatch,
                              "probabilities out of " + g.name(v) + " sum to " +
                                  format_rational(total)});
  }
  return r;
}

inline void require_valid(const Game& g) {
  auto r = validate(g);
  if (!r.ok()) throw InvalidGame(r.summary());
}

/// A game with integer weights and threshold 0, plus the scaling used to get there.
struct NormalizedGame {
  Game game;
  std::vector<Integer> weight;  // indexed by EdgeId
  Integer scale = 1;
  Rational threshold = 0;

  const Integer& w(EdgeId e) const { return weight[e]; }
  const Integer& w(VertexId u, VertexId v) const {
    auto e = game.edge_between(u, v);
    if (!e) throw std::invalid_argument("no such edge");
    return weight[*e];
  }
  Integer max_abs_weight() const {
    Integer m = 0;
    for (const auto& x : weight)
      if (abs(x) > m) m = abs(x);
    return m;
  }
  /// Weights as machine integers, for bounded product constructions.
  std::vector<std::int64_t> small_weights(std::int64_t bound_factor = 1) const {
    std::vector<std::int64_t> out;
    out.reserve(weight.size());
    const Integer limit = Integer(1) << 40;
    if (max_abs_weight() * bound_factor >= limit)
      throw BudgetExceeded("weights too large for the product construction");
    for (const auto& x : weight) out.push_back(x.get_si());
    return out;
  }
};

inline NormalizedGame normalize(const Game& g, const Rational& lambda) {
  Integer scale = 1;
  for (const Edge& e : g.edges()) {
    Rational shifted = e.weight - lambda;
    scale = lcm(scale, shifted.get_den());
  }
  std::vector<Edge> edges = g.edges();
  std::vector<Integer> ints;
  ints.reserve(edges.size());
  for (Edge& e : edges) {
    Rational scaled = (e.weight - lambda) * scale;
    ints.push_back(scaled.get_num());
    e.weight = scaled;
  }
  return NormalizedGame{Game(g.names(), g.owners(), std::move(edges), g.title()), std::move(ints),
                        scale, lambda};
}

/// Hands every Random vertex to Player 2 and drops probabilities.
inline Game adversarial_projection(const Game& g) {
  std::vector<Owner> owners = g.owners();
  for (Owner& o : owners)
    if (o == Owner::Random) o = Owner::P2;
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e.prob = 0;
  return Game(g.names(), std::move(owners), std::move(edges), g.title());
}

inline NormalizedGame adversarial_projection(const NormalizedGame& g) {
  return NormalizedGame{adversarial_projection(g.game), g.weight, g.scale, g.threshold};
}

/// Empty string when S induces a subgame, otherwise the reason it does not.
inline std::string subgame_violation(const Game& g, const VertexSet& s) {
  for (VertexId v : s.members()) {
    bool inside = false;
    for (VertexId u : g.successors(v)) {
      if (s.contains(u)) inside = true;
      else if (g.owner(v) == Owner::Random)
        return "random vertex " + g.name(v) + " loses out-edge to " + g.name(u);
    }
    if (!inside) return "vertex " + g.name(v) + " has no successor inside the set";
  }
  return {};
}

inline bool is_subgame(const Game& g, const VertexSet& s) {
  return subgame_violation(g, s).empty();
}

/// G restricted to S, with vertices renumbered in increasing id order.
inline Game restrict(const Game& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("cannot restrict to the empty set");
  if (auto why = subgame_violation(g, s); !why.empty())
    throw std::invalid_argument("not a subgame: " + why);
  std::vector<VertexId> remap(g.size(), g.size());
  std::vector<std::string> names;
  std::vector<Owner> owners;
  for (VertexId v : s.members()) {
    remap[v] = names.size();
    names.push_back(g.name(v));
    owners.push_back(g.owner(v));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (s.contains(e.from) && s.contains(e.to))
      edges.push_back(Edge{remap[e.from], remap[e.to], e.weight, e.prob});
  return Game(std::move(names), std::move(owners), std::move(edges), g.title());
}

}  // namespace wmpg
