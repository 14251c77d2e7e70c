#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "wmpg/rational.hpp"

namespace wmpg {

/// 64-bit Mersenne Twister; its output sequence is fixed by the C++ standard,
/// so seeded runs reproduce across platforms.
using Rng = std::mt19937_64;

/// Unbiased draw from [0, n) by rejection (std distributions are not portable).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

/// Index into `probs` (summing to 1) chosen by comparing one 64-bit draw,
/// rescaled to [0, 1), against the exact cumulative sums.
inline std::size_t sample_index(Rng& rng, const std::vector<Rational>& probs) {
  Integer draw;
  const std::uint64_t x = rng();
  mpz_import(draw.get_mpz_t(), 1, 1, sizeof x, 0, 0, &x);
  Rational u(draw, Integer(Integer(1) << 64));
  u.canonicalize();
  Rational cum = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  return probs.size() - 1;
}

}  // namespace wmpg
