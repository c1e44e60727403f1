#pragma once

// Domain types for competitive Lotka-Volterra systems
//
//   x_i' = b_i x_i (1 - sum_j a_ij x_j),   b_i > 0, a_ii > 0, a_ij >= 0,
//
// and the half-space predicates every persistence/extinction criterion is
// assembled from. All types are values; all functions are pure.

#include <cstddef>
#include <span>
#include <vector>

#include "lv/error.hpp"
#include "lv/index_set.hpp"
#include "lv/scalar.hpp"

namespace lv {

template <class T>
using Vec = std::vector<T>;

template <class T>
class LVSystem {
 public:
  using scalar_type = T;

  /// Validates shapes and the competitive sign pattern; throws Errc::Validation
  /// naming the offending entry.
  LVSystem(Vec<T> growth, std::vector<Vec<T>> interaction, Arith<T> arith = {});

  std::size_t dim() const { return n_; }
  const T& b(std::size_t i) const { return growth_[i]; }
  const T& a(std::size_t i, std::size_t j) const { return coeffs_[i * n_ + j]; }
  std::span<const T> row(std::size_t i) const { return {coeffs_.data() + i * n_, n_}; }
  const Vec<T>& growth() const { return growth_; }
  std::vector<Vec<T>> interaction() const;
  const Arith<T>& arith() const { return arith_; }

  /// row_i . x
  T row_dot(std::size_t i, std::span<const T> x) const;

  /// Same interaction matrix, different growth rates.
  LVSystem with_growth(Vec<T> growth) const { return LVSystem(std::move(growth), interaction(), arith_); }

  /// Species renumbered so that new index k is old index perm[k].
  LVSystem relabeled(const std::vector<std::size_t>& perm) const;

 private:
  std::size_t n_ = 0;
  Vec<T> growth_;
  Vec<T> coeffs_;
  Arith<T> arith_;
};

/// Axis-aligned box [lo, hi] in the nonnegative orthant.
template <class T>
struct Cell {
  Vec<T> lo;
  Vec<T> hi;

  static Cell from_origin(Vec<T> hi) { return Cell{Vec<T>(hi.size(), T(0)), std::move(hi)}; }
};

/// { x >= 0 : coeffs . x = 1 }
template <class T>
struct Plane {
  Vec<T> coeffs;

  /// The zero-growth plane of species i.
  static Plane nullcline(const LVSystem<T>& sys, std::size_t i) {
    auto r = sys.row(i);
    return Plane{Vec<T>(r.begin(), r.end())};
  }
};

enum class Position { Below, On, Above };
enum class SetPosition { Below, On, Above, Mixed };

const char* to_string(Position p);
const char* to_string(SetPosition p);

template <class T>
T dot(std::span<const T> u, std::span<const T> x);

template <class T>
Position classify_point(const Plane<T>& plane, const Vec<T>& x, const Arith<T>& arith);

/// Components outside `support` zeroed.
template <class T>
Vec<T> project_support(const Vec<T>& x, IndexSet support);

/// Vertices of the polytope { x in cell : plane(x) = 1 } obtained by
/// intersecting the plane with every edge of the box. Duplicates removed
/// (exactly, or within eps in max-norm). Empty iff the polytope is empty.
template <class T>
std::vector<Vec<T>> cell_plane_vertices(const Cell<T>& cell, const Plane<T>& plane, const Arith<T>& arith);

/// Position of a convex set given by its vertices. Throws on an empty list.
template <class T>
SetPosition set_position(const std::vector<Vec<T>>& vertices, const Plane<T>& plane, const Arith<T>& arith);

template <class T>
bool componentwise_le(const Vec<T>& x, const Vec<T>& y, const Arith<T>& arith) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!arith.le(x[i], y[i])) return false;
  return true;
}

template <class T>
Vec<T> unit_point(std::size_t n, std::size_t i, const T& value) {
  Vec<T> v(n, T(0));
  v[i] = value;
  return v;
}

std::vector<double> to_double(const Vec<Rational>& v);
inline const std::vector<double>& to_double(const std::vector<double>& v) { return v; }
LVSystem<double> to_double(const LVSystem<Rational>& sys, double eps = kDefaultEpsilon);
inline const LVSystem<double>& to_double(const LVSystem<double>& sys) { return sys; }

}  // namespace lv
