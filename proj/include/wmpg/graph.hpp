#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace wmpg {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Strongly connected components of the subgraph induced by `allowed`
/// (all states when empty), in reverse topological order.
inline std::vector<std::vector<std::size_t>> sccs(const Adjacency& succ,
                                                  const std::vector<char>& allowed = {}) {
  const std::size_t n = succ.size();
  auto ok = [&](std::size_t v) { return allowed.empty() || allowed[v]; };
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (!ok(root) || index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < succ[v].size()) {
        const std::size_t u = succ[v][pos++];
        if (!ok(u)) continue;
        if (index[u] == kUnvisited) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          call.emplace_back(u, 0);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return out;
}

/// Bottom SCCs: components with no edge leaving them.
inline std::vector<std::vector<std::size_t>> bottom_sccs(const Adjacency& succ) {
  std::vector<std::size_t> comp_of(succ.size());
  auto comps = sccs(succ);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) comp_of[v] = c;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool bottom = true;
    for (std::size_t v : comps[c])
      for (std::size_t u : succ[v])
        if (comp_of[u] != c) bottom = false;
    if (bottom) out.push_back(comps[c]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Adjacency reverse(const Adjacency& succ) {
  Adjacency pred(succ.size());
  for (std::size_t v = 0; v < succ.size(); ++v)
    for (std::size_t u : succ[v]) pred[u].push_back(v);
  return pred;
}

/// States that can reach `target` along edges inside `allowed` (all when empty).
inline std::vector<char> can_reach(const Adjacency& succ, const std::vector<char>& target,
                                   const std::vector<char>& allowed = {}) {
  const Adjacency pred = reverse(succ);
  auto ok = [&](std::size_t v) { return allowed.empty() || allowed[v]; };
  std::vector<char> seen(succ.size(), 0);
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < succ.size(); ++v)
    if (target[v] && ok(v)) {
      seen[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    const std::size_t u = work.back();
    work.pop_back();
    for (std::size_t v : pred[u])
      if (!seen[v] && ok(v)) {
        seen[v] = 1;
        work.push_back(v);
      }
  }
  return seen;
}

/// Markov decision process: random states move by (positive) probability,
/// the others are resolved by a single controller.
struct Mdp {
  std::vector<char> random;
  Adjacency succ;
  std::size_t size() const { return succ.size(); }
};

/// Maximal end components among `allowed` states.
inline std::vector<std::vector<std::size_t>> maximal_end_components(const Mdp& m,
                                                                    const std::vector<char>& allowed) {
  std::vector<std::vector<std::size_t>> result;
  std::vector<std::vector<std::size_t>> work;
  {
    std::vector<std::size_t> all;
    for (std::size_t v = 0; v < m.size(); ++v)
      if (allowed[v]) all.push_back(v);
    if (!all.empty()) work.push_back(std::move(all));
  }
  std::vector<char> in(m.size(), 0);
  while (!work.empty()) {
    std::vector<std::size_t> c = std::move(work.back());
    work.pop_back();
    for (std::size_t v : c) in[v] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v : c) {
        if (!in[v]) continue;
        bool any = false, all = true;
        for (std::size_t u : m.succ[v]) {
          if (in[u]) any = true;
          else all = false;
        }
        if (m.random[v] ? !all : !any) {
          in[v] = 0;
          changed = true;
        }
      }
    }
    auto comps = sccs(m.succ, in);
    std::size_t remaining = 0;
    for (std::size_t v : c) remaining += in[v];
    for (std::size_t v : c) in[v] = 0;
    if (remaining == 0) continue;
    if (comps.size() == 1 && comps[0].size() == remaining) {
      result.push_back(std::move(comps[0]));
    } else {
      for (auto& comp : comps) work.push_back(std::move(comp));
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

/// States from which the controller reaches `target` with probability 1.
inline std::vector<char> almost_sure_reach(const Mdp& m, const std::vector<char>& target) {
  const std::size_t n = m.size();
  std::vector<char> r(n, 1);
  for (;;) {
    const std::vector<char> good = can_reach(m.succ, target, r);
    bool removed = false;
    for (std::size_t v = 0; v < n; ++v)
      if (r[v] && !good[v]) {
        r[v] = 0;
        removed = true;
      }
    if (!removed) return r;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!r[v] || target[v]) continue;
        bool any = false, all = true;
        for (std::size_t u : m.succ[v]) {
          if (r[u]) any = true;
          else all = false;
        }
        if (m.random[v] ? !all : !any) {
          r[v] = 0;
          changed = true;
        }
      }
    }
  }
}

}  // namespace wmpg
