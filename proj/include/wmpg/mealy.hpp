#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmpg/game.hpp"
#include "wmpg/game_json.hpp"

namespace wmpg {

using StateId = std::size_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// Deterministic finite-memory strategy. next[q][v] is the state after reading
/// v in q; out[q][v] is the chosen successor, empty (epsilon) on vertices the
/// owner does not control.
struct MealyStrategy {
  Player owner = Player::P1;
  std::vector<std::string> state_names;
  StateId initial = 0;
  std::vector<std::vector<StateId>> next;
  std::vector<std::vector<std::optional<VertexId>>> out;

  MealyStrategy() = default;
  MealyStrategy(Player owner, std::size_t states, std::size_t vertices)
      : owner(owner), next(states, std::vector<StateId>(vertices, kNoState)),
        out(states, std::vector<std::optional<VertexId>>(vertices)) {
    for (std::size_t q = 0; q < states; ++q) state_names.push_back("q" + std::to_string(q));
  }

  std::size_t memory_size() const { return next.size(); }
  std::size_t vertex_count() const { return next.empty() ? 0 : next[0].size(); }

  bool is_total() const {
    for (const auto& row : next)
      for (StateId s : row)
        if (s == kNoState) return false;
    return true;
  }

  std::optional<StateId> find_state(const std::string& name) const {
    for (StateId q = 0; q < state_names.size(); ++q)
      if (state_names[q] == name) return q;
    return std::nullopt;
  }

  friend bool operator==(const MealyStrategy& a, const MealyStrategy& b) {
    return a.owner == b.owner && a.initial == b.initial && a.next == b.next && a.out == b.out;
  }
};

/// Empty when the machine is a well-formed total strategy for `owner` in g.
inline std::string strategy_violation(const MealyStrategy& m, const Game& g) {
  if (m.next.empty()) return "machine has no states";
  if (m.initial >= m.memory_size()) return "initial state out of range";
  for (StateId q = 0; q < m.memory_size(); ++q) {
    if (m.next[q].size() != g.size() || m.out[q].size() != g.size())
      return "machine rows do not cover the vertex set";
    for (VertexId v = 0; v < g.size(); ++v) {
      if (m.next[q][v] == kNoState)
        return "partial transition at (" + m.state_names[q] + ", " + g.name(v) + ")";
      if (m.next[q][v] >= m.memory_size()) return "transition target out of range";
      const bool owned = owned_by(g.owner(v), m.owner);
      const auto& o = m.out[q][v];
      if (owned != o.has_value())
        return "output at (" + m.state_names[q] + ", " + g.name(v) + ") must be " +
               (owned ? "a successor" : "epsilon");
      if (o && !g.edge_between(v, *o))
        return "output " + g.name(*o) + " at " + g.name(v) + " is not an edge";
    }
  }
  return {};
}

inline void require_strategy(const MealyStrategy& m, const Game& g) {
  if (auto why = strategy_violation(m, g); !why.empty()) throw std::invalid_argument(why);
}

/// Single-state strategy given by a choice per owned vertex (lowest successor
/// where `choice` has no entry).
inline MealyStrategy memoryless(const Game& g, Player owner,
                                const std::vector<std::optional<VertexId>>& choice = {}) {
  MealyStrategy m(owner, 1, g.size());
  m.state_names = {"q0"};
  for (VertexId v = 0; v < g.size(); ++v) {
    m.next[0][v] = 0;
    if (!owned_by(g.owner(v), owner)) continue;
    m.out[0][v] = v < choice.size() && choice[v] ? *choice[v] : g.successors(v).front();
  }
  return m;
}

inline json strategy_to_json(const MealyStrategy& m, const Game& g) {
  json j;
  j["owner"] = to_string(m.owner);
  j["initial"] = m.state_names[m.initial];
  j["transitions"] = json::array();
  for (StateId q = 0; q < m.memory_size(); ++q)
    for (VertexId v = 0; v < g.size(); ++v) {
      if (m.next[q][v] == kNoState) continue;
      json t = {{"state", m.state_names[q]}, {"input", g.name(v)},
                {"next", m.state_names[m.next[q][v]]}};
      t["output"] = m.out[q][v] ? json(g.name(*m.out[q][v])) : json(nullptr);
      j["transitions"].push_back(std::move(t));
    }
  return j;
}

/// States are numbered in order of first appearance (initial first).
/// Missing (state, input) pairs stay undefined; see MealyStrategy::is_total.
inline MealyStrategy strategy_from_json(const json& j, const Game& g) {
  const std::string owner = j.at("owner").get<std::string>();
  if (owner != "p1" && owner != "p2") throw std::invalid_argument("strategy owner must be p1 or p2");
  std::map<std::string, StateId> ids;
  std::vector<std::string> names;
  auto state = [&](const std::string& s) {
    auto [it, fresh] = ids.emplace(s, names.size());
    if (fresh) names.push_back(s);
    return it->second;
  };
  state(j.at("initial").get<std::string>());
  for (const auto& t : j.at("transitions")) {
    state(t.at("state").get<std::string>());
    state(t.at("next").get<std::string>());
  }
  MealyStrategy m(owner == "p1" ? Player::P1 : Player::P2, names.size(), g.size());
  m.state_names = names;
  m.initial = 0;
  for (const auto& t : j.at("transitions")) {
    const StateId q = ids.at(t.at("state").get<std::string>());
    const VertexId v = g.id(t.at("input").get<std::string>());
    if (m.next[q][v] != kNoState)
      throw std::invalid_argument("duplicate transition for state " + names[q] + " on " + g.name(v));
    m.next[q][v] = ids.at(t.at("next").get<std::string>());
    if (t.contains("output") && !t.at("output").is_null())
      m.out[q][v] = g.id(t.at("output").get<std::string>());
  }
  return m;
}

}  // namespace wmpg
