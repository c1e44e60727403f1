#pragma once

// Reference computations used by the tests. Each one is derived from the
// defining geometry or algebra and shares no code with the library routines
// it is compared against.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "lv/core.hpp"

namespace lvtest::oracle {

using lv::LVSystem;
using lv::Rational;
using lv::Vec;

/// Upper bound from the intersection picture: the i-th coordinate of the
/// carrying capacity if that point is on or above another nullcline,
/// otherwise the largest i-coordinate among the points where nullcline i
/// meets some other nullcline inside a coordinate plane (x_i, x_j), taken
/// over the closed quadrant with x_i > 0 (0 if there are none).
inline Vec<Rational> ultimate_bound(const LVSystem<Rational>& sys) {
  const std::size_t n = sys.dim();
  Vec<Rational> U(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (n == 1) {
      U[i] = 1 / sys.a(i, i);
      continue;
    }
    bool saturated = false;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && sys.a(j, i) / sys.a(i, i) >= 1) saturated = true;
    if (saturated) {
      U[i] = 1 / sys.a(i, i);
      continue;
    }
    Rational best(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        // a_ii xi + a_ij xj = 1 and a_ki xi + a_kj xj = 1, by Cramer's rule.
        Rational det = sys.a(i, i) * sys.a(k, j) - sys.a(i, j) * sys.a(k, i);
        if (det == 0) continue;
        Rational xi = (sys.a(k, j) - sys.a(i, j)) / det;
        Rational xj = (sys.a(i, i) - sys.a(k, i)) / det;
        if (xi > 0 && xj >= 0) best = std::max(best, xi);
      }
    }
    U[i] = best;
  }
  return U;
}

/// Determinant by the permutation expansion.
inline Rational determinant(const std::vector<Vec<Rational>>& M) {
  const std::size_t m = M.size();
  if (m == 0) return Rational(1);
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  Rational det(0);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (p[a] > p[b]) ++inversions;
    Rational term(inversions % 2 ? -1 : 1);
    for (std::size_t r = 0; r < m && term != 0; ++r) term *= M[r][p[r]];
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

/// Equilibrium on `support` by Cramer's rule; nullopt when the restricted
/// matrix is singular or some solved component is not strictly positive.
inline std::optional<Vec<Rational>> equilibrium(const LVSystem<Rational>& sys, const std::vector<std::size_t>& support) {
  const std::size_t m = support.size();
  std::vector<Vec<Rational>> M(m, Vec<Rational>(m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) M[r][c] = sys.a(support[r], support[c]);
  Rational det = determinant(M);
  if (det == 0) return std::nullopt;
  Vec<Rational> x(sys.dim(), Rational(0));
  for (std::size_t c = 0; c < m; ++c) {
    auto Mc = M;
    for (std::size_t r = 0; r < m; ++r) Mc[r][c] = 1;
    Rational v = determinant(Mc) / det;
    if (v <= 0) return std::nullopt;
    x[support[c]] = v;
  }
  return x;
}

/// max_j max(0, x_j + (1 - row_j . x) / a_jj), written out directly.
inline Vec<Rational> upper_from_lower(const LVSystem<Rational>& sys, const Vec<Rational>& x) {
  Vec<Rational> y(sys.dim());
  for (std::size_t j = 0; j < sys.dim(); ++j) {
    Rational load(0);
    for (std::size_t m = 0; m < sys.dim(); ++m) load += sys.a(j, m) * x[m];
    Rational v = x[j] + (1 - load) / sys.a(j, j);
    y[j] = v > 0 ? v : Rational(0);
  }
  return y;
}

/// max c . x over { lo <= x <= hi, u . x = 1 } (continuous knapsack: start at
/// lo and spend the remaining budget on the best value-per-weight
/// coordinates first). nullopt when infeasible.
inline std::optional<Rational> max_linear_over_slice(const Vec<Rational>& lo, const Vec<Rational>& hi,
                                                     const Vec<Rational>& u, const Vec<Rational>& c) {
  const std::size_t n = lo.size();
  Rational value(0), budget(1);
  for (std::size_t d = 0; d < n; ++d) {
    budget -= u[d] * lo[d];
    value += c[d] * lo[d];
    if (u[d] == 0 && c[d] > 0) value += c[d] * (hi[d] - lo[d]);
  }
  if (budget < 0) return std::nullopt;
  std::vector<std::size_t> order;
  for (std::size_t d = 0; d < n; ++d)
    if (u[d] > 0) order.push_back(d);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] / u[a] > c[b] / u[b]; });
  for (std::size_t d : order) {
    if (budget == 0) break;
    Rational room = (hi[d] - lo[d]) * u[d];
    Rational spend = std::min(room, budget);
    value += c[d] / u[d] * spend;
    budget -= spend;
  }
  if (budget != 0) return std::nullopt;
  return value;
}

}  // namespace lvtest::oracle
