#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wmpg/errors.hpp"
#include "wmpg/mealy.hpp"

namespace wmpg {

inline constexpr double kEnumerationBudget = 5e7;

namespace detail {

/// True when BFS from state 0 (vertices in id order) discovers every state
/// and discovers them in increasing order. Exactly one machine per
/// isomorphism class of reachable machines passes.
inline bool canonical(const MealyStrategy& m) {
  const std::size_t n = m.memory_size();
  std::vector<char> seen(n, 0);
  std::vector<StateId> queue{0};
  seen[0] = 1;
  StateId expected = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateId q = queue[head];
    for (StateId t : m.next[q]) {
      if (seen[t]) continue;
      if (t != expected) return false;
      seen[t] = 1;
      ++expected;
      queue.push_back(t);
    }
  }
  return expected == n;
}

}  // namespace detail

/// Streams every total machine for `owner` with 1..max_states states, one per
/// isomorphism class, initial state 0. At owned vertices in `region` the
/// output stays inside `region` when possible. The callback returns false to
/// stop; the result is the number of machines emitted.
inline std::size_t enumerate_machines(const Game& g, Player owner, std::size_t max_states,
                                      const std::function<bool(const MealyStrategy&)>& visit,
                                      const VertexSet& region, double budget = kEnumerationBudget) {
  const std::size_t nv = g.size();
  std::vector<std::vector<std::optional<VertexId>>> choices(nv);
  double per_state = 1;
  for (VertexId v = 0; v < nv; ++v) {
    if (owned_by(g.owner(v), owner)) {
      for (VertexId u : g.successors(v))
        if (!region.contains(v) || region.contains(u)) choices[v].push_back(u);
      if (choices[v].empty())
        for (VertexId u : g.successors(v)) choices[v].push_back(u);
    } else {
      choices[v].push_back(std::nullopt);
    }
    per_state *= static_cast<double>(choices[v].size());
  }
  std::size_t emitted = 0;
  for (std::size_t n = 1; n <= max_states; ++n) {
    double raw = 1;
    for (std::size_t q = 0; q < n; ++q)
      for (VertexId v = 0; v < nv; ++v) raw *= static_cast<double>(n);
    for (std::size_t q = 0; q < n; ++q) raw *= per_state;
    if (raw > budget)
      throw BudgetExceeded("enumerating " + std::to_string(n) + "-state machines needs " +
                           std::to_string(raw) + " candidates");
    MealyStrategy m(owner, n, nv);
    std::vector<std::size_t> next_digit(n * nv, 0), out_digit(n * nv, 0);
    for (std::size_t q = 0; q < n; ++q)
      for (VertexId v = 0; v < nv; ++v) {
        m.next[q][v] = 0;
        m.out[q][v] = choices[v][0];
      }
    for (;;) {
      if (detail::canonical(m)) {
        ++emitted;
        if (!visit(m)) return emitted;
      }
      // Odometer over (next, out) per (q, v).
      std::size_t i = 0;
      for (; i < n * nv; ++i) {
        const std::size_t q = i / nv, v = i % nv;
        if (++out_digit[i] < choices[v].size()) {
          m.out[q][v] = choices[v][out_digit[i]];
          break;
        }
        out_digit[i] = 0;
        m.out[q][v] = choices[v][0];
        if (++next_digit[i] < n) {
          m.next[q][v] = next_digit[i];
          break;
        }
        next_digit[i] = 0;
        m.next[q][v] = 0;
      }
      if (i == n * nv) break;
    }
  }
  return emitted;
}

inline std::size_t enumerate_machines(const Game& g, Player owner, std::size_t max_states,
                                      const std::function<bool(const MealyStrategy&)>& visit) {
  return enumerate_machines(g, owner, max_states, visit, g.all());
}

/// All machines with exactly `states` states (convenience for small sweeps).
inline std::vector<MealyStrategy> machines_with(const Game& g, Player owner, std::size_t states,
                                                const VertexSet& region) {
  std::vector<MealyStrategy> out;
  enumerate_machines(g, owner, states, [&](const MealyStrategy& m) {
    if (m.memory_size() == states) out.push_back(m);
    return true;
  }, region);
  return out;
}

}  // namespace wmpg
