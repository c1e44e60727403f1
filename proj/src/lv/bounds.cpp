#include "lv/bounds.hpp"

#include <algorithm>

namespace lv {

template <class T>
Vec<T> carrying_capacities(const LVSystem<T>& sys) {
  Vec<T> y(sys.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i) y[i] = T(1) / sys.a(i, i);
  return y;
}

template <class T>
Vec<T> ultimate_upper_bound(const LVSystem<T>& sys, IndexSet active, PairRule rule) {
  const auto& ar = sys.arith();
  const std::size_t n = sys.dim();
  if (!active.is_subset_of(IndexSet::all(n))) throw Error(Errc::InvalidArgument, "active set exceeds species count");
  Vec<T> u(n, T(0));
  for (std::size_t i : active.to_vector()) {
    const T cap = T(1) / sys.a(i, i);
    const auto others = active.without(i).to_vector();
    if (others.empty()) {
      u[i] = cap;
      continue;
    }

    // Carrying-capacity point on or above a rival nullcline, or a rival that
    // does not affect species i: no reduction possible.
    bool saturated = false;
    for (std::size_t j : others)
      if (ar.le(sys.a(i, i), sys.a(j, i)) || ar.eq(sys.a(i, j), T(0))) saturated = true;
    if (saturated) {
      u[i] = cap;
      continue;
    }

    // Nullcline of i on or below every rival nullcline.
    bool dominated = true;
    for (std::size_t j : others)
      for (std::size_t k : others)
        if (ar.gt(sys.a(j, k), sys.a(i, k))) dominated = false;
    if (dominated) {
      u[i] = T(0);
      continue;
    }

    // Largest i-coordinate of nullcline i meeting nullcline k in the (i, j) coordinate plane.
    std::optional<T> best;
    for (std::size_t j : others) {
      for (std::size_t k : others) {
        if (rule == PairRule::DistinctOnly && j == k) continue;
        if (!ar.gt(sys.a(k, j), sys.a(i, j))) continue;
        const T den = sys.a(i, i) * sys.a(k, j) - sys.a(i, j) * sys.a(k, i);
        if (ar.sign(den) <= 0) continue;
        T val = (sys.a(k, j) - sys.a(i, j)) / den;
        if (!best || val > *best) best = std::move(val);
      }
    }
    u[i] = best ? std::min(*best, cap) : cap;
  }
  return u;
}

template <class T>
std::optional<Vec<T>> ultimate_upper_bound_simplified(const LVSystem<T>& sys) {
  const auto& ar = sys.arith();
  const std::size_t n = sys.dim();
  if (n == 1) return carrying_capacities(sys);
  Vec<T> u(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && !ar.gt(sys.a(i, i), sys.a(j, i))) return std::nullopt;

    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      bool row_dominates = true;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && !ar.ge(sys.a(i, k), sys.a(j, k))) row_dominates = false;
      if (row_dominates) continue;

      if (!ar.gt(sys.a(j, j), sys.a(i, j))) return std::nullopt;
      const T den = sys.a(i, i) * sys.a(j, j) - sys.a(i, j) * sys.a(j, i);
      if (ar.sign(den) <= 0) return std::nullopt;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        T lhs = (sys.a(l, i) * (sys.a(j, j) - sys.a(i, j)) + sys.a(l, j) * (sys.a(i, i) - sys.a(j, i))) / den;
        if (!ar.lt(lhs, T(1))) return std::nullopt;
      }
    }

    T best(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !ar.gt(sys.a(j, j), sys.a(i, j))) continue;
      T val = (sys.a(j, j) - sys.a(i, j)) / (sys.a(i, i) * sys.a(j, j) - sys.a(i, j) * sys.a(j, i));
      if (val > best) best = std::move(val);
    }
    u[i] = best;
  }
  return u;
}

template <class T>
Vec<T> refine_upper_from_lower(const LVSystem<T>& sys, const Vec<T>& lower) {
  const auto& ar = sys.arith();
  const std::size_t n = sys.dim();
  if (lower.size() != n) throw Error(Errc::Dimension, "lower bound length mismatch");
  Vec<T> load(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] < 0) throw Error(Errc::Precondition, "lower bound must be nonnegative");
    load[i] = sys.row_dot(i, lower);
    if (ar.gt(load[i], T(1)) && ar.sign(lower[i]) != 0)
      throw Error(Errc::Precondition, "lower bound component " + std::to_string(i + 1) +
                                          " must vanish where its nullcline is exceeded");
  }
  Vec<T> upper(n);
  for (std::size_t j = 0; j < n; ++j) {
    T v = lower[j] + (T(1) - load[j]) / sys.a(j, j);
    upper[j] = v < 0 ? T(0) : v;
  }
  return upper;
}

template <class T>
Vec<T> contract_upper_bound(const LVSystem<T>& sys, const BoundsState<T>& state, IndexSet converged) {
  const auto& ar = sys.arith();
  const std::size_t n = sys.dim();
  if (state.lower.size() != n || state.upper.size() != n) throw Error(Errc::Dimension, "bounds length mismatch");
  const Vec<T>& lo = state.lower;
  Vec<T> hi = state.upper;
  for (std::size_t j = 0; j < n; ++j) {
    if (lo[j] < 0) throw Error(Errc::Precondition, "lower bound must be nonnegative");
    if (!ar.le(lo[j], hi[j])) throw Error(Errc::Precondition, "lower bound exceeds upper bound");
    if (converged.contains(j)) hi[j] = lo[j];
  }

  IndexSet open;
  for (std::size_t j = 0; j < n; ++j)
    if (ar.lt(lo[j], hi[j])) open = open.with(j);

  Vec<T> z = hi;
  for (std::size_t i = 0; i < n; ++i) {
    if (!open.contains(i) || open == IndexSet{i}) continue;
    const auto peers = open.without(i).to_vector();

    // Corner lo^{others} + hi^{i} reaches some peer nullcline, or a peer that
    // i does not feel: keep the current bound.
    Vec<T> lo_without_i = lo;
    lo_without_i[i] = T(0);
    bool keep = false;
    for (std::size_t j : peers) {
      if (ar.eq(sys.a(i, j), T(0)) || ar.ge(sys.row_dot(j, lo_without_i) + sys.a(j, i) * hi[i], T(1))) {
        keep = true;
        break;
      }
    }
    if (keep) continue;

    // Slice of nullcline i in the cell on or below every peer nullcline. Contact
    // with a peer nullcline is tolerated only where x_i sits at its lower bound;
    // contact elsewhere leaves an interior equilibrium on the slice.
    const auto slice = cell_plane_vertices(Cell<T>{lo, hi}, Plane<T>::nullcline(sys, i), ar);
    bool collapses = true;
    for (std::size_t j : peers) {
      for (const auto& v : slice) {
        int c = ar.compare(sys.row_dot(j, v), T(1));
        if (c > 0 || (c == 0 && !ar.eq(v[i], lo[i]))) collapses = false;
      }
    }
    if (collapses) {
      z[i] = lo[i];
      continue;
    }

    // Largest i-coordinate where nullcline i meets a peer nullcline k inside the
    // two-dimensional cell spanned by coordinates i and j.
    std::optional<T> best;
    for (std::size_t j : peers) {
      for (std::size_t k : peers) {
        T ri(1), rk(1);
        for (std::size_t l = 0; l < n; ++l) {
          if (l == i || l == j) continue;
          ri -= sys.a(i, l) * lo[l];
          rk -= sys.a(k, l) * lo[l];
        }
        const T det = sys.a(i, i) * sys.a(k, j) - sys.a(i, j) * sys.a(k, i);
        if (ar.sign(det) == 0) continue;
        T xi = (ri * sys.a(k, j) - sys.a(i, j) * rk) / det;
        T xj = (sys.a(i, i) * rk - sys.a(k, i) * ri) / det;
        if (ar.lt(xi, lo[i]) || ar.gt(xi, hi[i]) || ar.lt(xj, lo[j]) || ar.gt(xj, hi[j])) continue;
        if (!best || xi > *best) best = std::move(xi);
      }
    }
    if (best) z[i] = std::clamp(*best, lo[i], hi[i]);
  }
  return z;
}

template <class T>
CascadeResult<T> extinction_cascade(const LVSystem<T>& sys) {
  IndexSet active = IndexSet::all(sys.dim());
  CascadeResult<T> result;
  for (;;) {
    Vec<T> u = ultimate_upper_bound(sys, active);
    std::vector<std::size_t> zeros;
    for (std::size_t i : active.to_vector())
      if (u[i] == 0) zeros.push_back(i);
    if (zeros.empty()) {
      result.bound = std::move(u);
      return result;
    }
    for (std::size_t i : zeros) {
      result.extinct.push_back(i);
      active = active.without(i);
    }
  }
}

template <class T>
std::optional<SurvivalMargin<T>> survival_margin(const LVSystem<T>& sys, const Vec<T>& lower, const Vec<T>& upper,
                                                 std::size_t i) {
  const auto& ar = sys.arith();
  const std::size_t n = sys.dim();
  if (lower.size() != n || upper.size() != n) throw Error(Errc::Dimension, "bounds length mismatch");
  if (i >= n) throw Error(Errc::InvalidArgument, "species index out of range");
  IndexSet undetermined;
  for (std::size_t j = 0; j < n; ++j) {
    if (!ar.le(lower[j], upper[j])) throw Error(Errc::Precondition, "lower bound exceeds upper bound");
    if (ar.lt(lower[j], upper[j])) undetermined = undetermined.with(j);
  }
  if (!undetermined.contains(i)) throw Error(Errc::Precondition, "species must have upper bound above lower bound");

  Vec<T> corner = upper;
  corner[i] = lower[i];
  const T load = sys.row_dot(i, corner);
  if (ar.lt(load, T(1))) {
    return SurvivalMargin<T>{SurvivalMargin<T>::Kind::Quantitative, (T(1) - load) / sys.a(i, i)};
  }

  if (!ar.lt(sys.row_dot(i, lower), T(1))) return std::nullopt;
  const auto slice = cell_plane_vertices(Cell<T>{lower, corner}, Plane<T>::nullcline(sys, i), ar);
  if (slice.empty()) return std::nullopt;
  for (std::size_t j : undetermined.without(i).to_vector())
    if (set_position(slice, Plane<T>::nullcline(sys, j), ar) != SetPosition::Above) return std::nullopt;
  return SurvivalMargin<T>{SurvivalMargin<T>::Kind::Existence, std::nullopt};
}

#define LV_INSTANTIATE(T)                                                                               \
  template Vec<T> carrying_capacities<T>(const LVSystem<T>&);                                           \
  template Vec<T> ultimate_upper_bound<T>(const LVSystem<T>&, IndexSet, PairRule);                      \
  template std::optional<Vec<T>> ultimate_upper_bound_simplified<T>(const LVSystem<T>&);                \
  template Vec<T> refine_upper_from_lower<T>(const LVSystem<T>&, const Vec<T>&);                        \
  template Vec<T> contract_upper_bound<T>(const LVSystem<T>&, const BoundsState<T>&, IndexSet);         \
  template CascadeResult<T> extinction_cascade<T>(const LVSystem<T>&);                                  \
  template std::optional<SurvivalMargin<T>> survival_margin<T>(const LVSystem<T>&, const Vec<T>&,       \
                                                               const Vec<T>&, std::size_t);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
