#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wmpg/attractor.hpp"
#include "wmpg/game.hpp"
#include "wmpg/window.hpp"

namespace wmpg {

enum class ObjectiveKind { FWMP, BWMP };
enum class Side { Player1Objective, Player2Complement };

struct WindowObjective {
  ObjectiveKind kind = ObjectiveKind::FWMP;
  std::size_t ell = 1;  // unused for BWMP
  Rational threshold = 0;
  Side side = Side::Player1Objective;

  static WindowObjective fixed(std::size_t ell, Rational threshold = 0) {
    check_window_length(ell);
    return WindowObjective{ObjectiveKind::FWMP, ell, std::move(threshold), Side::Player1Objective};
  }
  static WindowObjective bounded(Rational threshold = 0) {
    return WindowObjective{ObjectiveKind::BWMP, 0, std::move(threshold), Side::Player1Objective};
  }
};

enum class QualMode { Positive, AlmostSure };

struct QualitativeLayer {
  VertexSet subgame;    // vertex set of the subgame the iteration ran on
  VertexSet winning;    // W_1 (positive) or W_2 (almost-sure trace)
  VertexSet attractor;  // Z_1 or Z_2
  AttractorResult attractor_detail;
};

struct QualitativeResult {
  QualMode mode = QualMode::Positive;
  VertexSet region;
  std::vector<QualitativeLayer> layers;       // positive mode
  std::vector<QualitativeLayer> aswin_trace;  // almost-sure mode
};

/// Player 1's positive winning region on the subgame induced by `domain`.
inline QualitativeResult pos_win(const NormalizedGame& g, const RegionOracle& solver,
                                 const VertexSet& domain) {
  const NormalizedGame projected = adversarial_projection(g);
  QualitativeResult out;
  out.mode = QualMode::Positive;
  out.region = VertexSet(g.game.size());
  VertexSet rest = domain;
  while (!rest.empty()) {
    const VertexSet w = solver.winning_region(projected, rest);
    if (w.empty()) break;
    AttractorResult z = positive_attractor(g.game, Player::P1, w, rest);
    VertexSet added = z.region;
    out.layers.push_back(QualitativeLayer{rest, w, added, std::move(z)});
    out.region |= added;
    rest -= added;
  }
  return out;
}
inline QualitativeResult pos_win(const NormalizedGame& g, const RegionOracle& solver) {
  return pos_win(g, solver, g.game.all());
}

/// Player 1's almost-sure winning region on the subgame induced by `domain`.
inline QualitativeResult as_win(const NormalizedGame& g, const RegionOracle& solver,
                                const VertexSet& domain) {
  QualitativeResult out;
  out.mode = QualMode::AlmostSure;
  VertexSet rest = domain;
  for (;;) {
    if (rest.empty()) {
      out.region = rest;
      return out;
    }
    const VertexSet w2 = rest - pos_win(g, solver, rest).region;
    if (w2.empty()) {
      out.region = rest;
      return out;
    }
    AttractorResult z = positive_attractor(g.game, Player::P2, w2, rest);
    VertexSet removed = z.region;
    out.aswin_trace.push_back(QualitativeLayer{rest, w2, removed, std::move(z)});
    rest -= removed;
  }
}
inline QualitativeResult as_win(const NormalizedGame& g, const RegionOracle& solver) {
  return as_win(g, solver, g.game.all());
}

/// Player 2's positive region for the complement objective.
inline VertexSet pos_win_p2(const NormalizedGame& g, const RegionOracle& solver) {
  return g.game.all() - as_win(g, solver).region;
}
/// Player 2's almost-sure region for the complement objective.
inline VertexSet as_win_p2(const NormalizedGame& g, const RegionOracle& solver) {
  return g.game.all() - pos_win(g, solver).region;
}

inline std::unique_ptr<RegionOracle> make_oracle(const WindowObjective& obj) {
  if (obj.kind == ObjectiveKind::FWMP) return std::make_unique<FwmpOracle>(obj.ell);
  return std::make_unique<CertifyingBwmpStub>();
}

/// Region of the player named by `obj.side` under the given mode.
inline VertexSet solve_region(const Game& game, const WindowObjective& obj, QualMode mode) {
  require_valid(game);
  const NormalizedGame g = normalize(game, obj.threshold);
  const auto solver = make_oracle(obj);
  if (obj.side == Side::Player1Objective)
    return mode == QualMode::Positive ? pos_win(g, *solver).region : as_win(g, *solver).region;
  return mode == QualMode::Positive ? pos_win_p2(g, *solver) : as_win_p2(g, *solver);
}

}  // namespace wmpg
