#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmpg/game.hpp"

namespace wmpg {

/// Oldest open window: age 0 means closed, otherwise the window has been open
/// for `age` steps with total payoff `deficit` < 0.
struct WindowTracker {
  std::uint32_t age = 0;
  std::int64_t deficit = 0;

  bool closed() const { return age == 0; }
  friend bool operator==(const WindowTracker&, const WindowTracker&) = default;

  /// Consumes one edge weight; returns true when a window has stayed open for
  /// ell steps (the tracker then resets to closed).
  bool step(std::size_t ell, std::int64_t w) {
    deficit = closed() ? w : deficit + w;
    ++age;
    if (deficit >= 0) {
      *this = {};
      return false;
    }
    if (age >= ell) {
      *this = {};
      return true;
    }
    return false;
  }
};

struct WindowAnnotation {
  std::size_t position = 0;
  std::optional<std::size_t> close;  // first j > position with TP(position, j) >= 0
  bool open_at_ell = false;          // no close within ell steps (and ell steps observed)
};

/// Per-position window bookkeeping for a finite play (sequence of vertices).
/// Closing positions are searched at most `horizon` steps ahead.
inline std::vector<WindowAnnotation> annotate_windows(const NormalizedGame& g,
                                                      const std::vector<VertexId>& play,
                                                      std::size_t ell,
                                                      std::size_t horizon = static_cast<std::size_t>(-1)) {
  std::vector<Integer> w;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) w.push_back(g.w(play[i], play[i + 1]));
  std::vector<WindowAnnotation> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    WindowAnnotation a;
    a.position = i;
    Integer sum = 0;
    for (std::size_t j = i; j < w.size() && j - i < horizon; ++j) {
      sum += w[j];
      if (sum >= 0) {
        a.close = j + 1;
        break;
      }
    }
    const std::size_t limit = i + ell;
    a.open_at_ell = (!a.close || *a.close > limit) && limit <= w.size() && horizon >= ell;
    out.push_back(a);
  }
  return out;
}

inline std::string describe(const WindowAnnotation& a, std::size_t ell) {
  std::string s = "window@" + std::to_string(a.position) + ": ";
  if (a.close) s += "closes at " + std::to_string(*a.close);
  else s += "open";
  if (a.open_at_ell) s += " (open-at-" + std::to_string(ell) + ")";
  return s;
}

}  // namespace wmpg
