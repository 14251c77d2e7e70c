#pragma once

#include <stdexcept>
#include <vector>

#include "wmpg/rational.hpp"

namespace wmpg {

/// Solves A x = b exactly. Rows are scaled to integers, then reduced by
/// Bareiss fraction-free elimination; back substitution runs over rationals.
inline std::vector<Rational> solve_exact(const std::vector<std::vector<Rational>>& a,
                                         const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Integer den = b[i].get_den();
    for (const Rational& x : a[i]) den = lcm(den, x.get_den());
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j] * den).get_num();
    m[i][n] = Rational(b[i] * den).get_num();
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) throw std::runtime_error("singular linear system");
    std::swap(m[pivot], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(t);
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
    x[i] = acc / Rational(m[i][i]);
    x[i].canonicalize();
  }
  return x;
}

}  // namespace wmpg
