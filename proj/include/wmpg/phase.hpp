#pragma once

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "wmpg/simulate.hpp"

namespace wmpg {

/// Smallest edge probability out of Random vertices (1 without chance).
inline Rational min_edge_probability(const Game& g) {
  Rational p = 1;
  for (VertexId v = 0; v < g.size(); ++v)
    if (g.owner(v) == Owner::Random)
      for (EdgeId e : g.out_edges(v)) p = std::min(p, g.edge(e).prob);
  return p;
}

/// Infinite-memory Player-2 strategy for the BWMP complement: phase ell
/// (ell = 1, 2, ...) plays supplier(ell) from its initial state for
/// m * |V| * ell * ceil(1 / q(ell)) steps, q(ell) = p^(m * |V| * ell),
/// where m is the supplier's memory and p the minimum edge probability.
class PhaseStrategy : public Agent {
public:
  using Supplier = std::function<MealyStrategy(std::size_t)>;

  struct Checkpoint {
    std::size_t phase = 1;
    Integer position = 0;
    StateId state = 0;
  };

  PhaseStrategy(const Game& g, Supplier supplier)
      : vertices_(g.size()), p_(min_edge_probability(g)), supplier_(std::move(supplier)) {
    reset();
  }
  PhaseStrategy(const Game& g, std::map<std::size_t, MealyStrategy> suppliers)
      : PhaseStrategy(g, [table = std::move(suppliers)](std::size_t ell) {
          auto it = table.find(ell);
          if (it == table.end()) throw std::out_of_range("no supplier for phase " + std::to_string(ell));
          return it->second;
        }) {}

  const MealyStrategy& supplier(std::size_t ell) const {
    auto it = cache_.find(ell);
    if (it == cache_.end()) {
      MealyStrategy m = supplier_(ell);
      if (m.owner != Player::P2) throw std::invalid_argument("phase suppliers must be Player-2 machines");
      it = cache_.emplace(ell, std::move(m)).first;
    }
    return it->second;
  }

  /// q(ell) = p^(m * |V| * ell).
  Rational q(std::size_t ell) const {
    const unsigned long e = supplier(ell).memory_size() * vertices_ * ell;
    Rational r(pow(p_.get_num(), e), pow(p_.get_den(), e));
    r.canonicalize();
    return r;
  }

  const Integer& phase_length(std::size_t ell) const {
    auto it = lengths_.find(ell);
    if (it != lengths_.end()) return it->second;
    const Rational inv = 1 / q(ell);
    Integer ceil_inv;
    mpz_cdiv_q(ceil_inv.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    return lengths_.emplace(ell, Integer(supplier(ell).memory_size() * vertices_ * ell) * ceil_inv)
        .first->second;
  }

  std::size_t phase() const { return at_.phase; }
  const Integer& position() const { return at_.position; }
  Checkpoint checkpoint() const { return at_; }
  void restore(const Checkpoint& c) { at_ = c; }

  /// Jumps to the first step of the next phase.
  void skip_to_next_phase() {
    at_.phase += 1;
    at_.position = 0;
    at_.state = supplier(at_.phase).initial;
  }

  Player owner() const override { return Player::P2; }
  void reset() override {
    at_ = {};
    at_.state = supplier(1).initial;
  }
  VertexId choose(const Game&, VertexId v, Rng&) override {
    advance();
    const MealyStrategy& m = supplier(at_.phase);
    const VertexId out = *m.out[at_.state][v];
    at_.state = m.next[at_.state][v];
    return out;
  }
  void observe(const Game&, VertexId v) override {
    advance();
    at_.state = supplier(at_.phase).next[at_.state][v];
  }
  std::unique_ptr<Agent> clone() const override { return std::make_unique<PhaseStrategy>(*this); }

private:
  void advance() {
    if (at_.position >= phase_length(at_.phase)) skip_to_next_phase();
    at_.position += 1;
  }

  std::size_t vertices_;
  Rational p_;
  Supplier supplier_;
  mutable std::map<std::size_t, MealyStrategy> cache_;
  mutable std::map<std::size_t, Integer> lengths_;
  Checkpoint at_;
};

}  // namespace wmpg
