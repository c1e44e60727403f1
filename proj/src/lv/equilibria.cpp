#include "lv/equilibria.hpp"

#include <algorithm>
#include <cmath>

namespace lv {

namespace {

template <class T>
T magnitude(const T& v) {
  return v < 0 ? T(-v) : v;
}

}  // namespace

template <class T>
SupportSolve<T> solve_support(const LVSystem<T>& sys, IndexSet support) {
  const std::size_t n = sys.dim();
  if (!support.is_subset_of(IndexSet::all(n))) throw Error(Errc::InvalidArgument, "support exceeds species count");
  const auto& ar = sys.arith();
  SupportSolve<T> out;
  out.support = support;
  const auto idx = support.to_vector();
  const std::size_t m = idx.size();
  if (m == 0) {
    out.nonsingular = true;
    out.solution = Vec<T>(n, T(0));
    out.equilibrium = Equilibrium<T>{support, *out.solution};
    return out;
  }

  std::vector<Vec<T>> mat(m, Vec<T>(m + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) mat[r][c] = sys.a(idx[r], idx[c]);
    mat[r][m] = T(1);
  }

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    if constexpr (Arith<T>::mode == Mode::Exact) {
      while (pivot < m && mat[pivot][col] == 0) ++pivot;
      if (pivot == m) return out;
    } else {
      for (std::size_t r = col + 1; r < m; ++r)
        if (magnitude(mat[r][col]) > magnitude(mat[pivot][col])) pivot = r;
      if (magnitude(mat[pivot][col]) <= ar.epsilon()) return out;
    }
    std::swap(mat[pivot], mat[col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      if (mat[r][col] == 0) continue;
      const T f = mat[r][col] / mat[col][col];
      for (std::size_t c = col; c <= m; ++c) mat[r][c] -= f * mat[col][c];
    }
  }
  out.nonsingular = true;

  Vec<T> xs(m);
  for (std::size_t r = m; r-- > 0;) {
    T s = mat[r][m];
    for (std::size_t c = r + 1; c < m; ++c) s -= mat[r][c] * xs[c];
    xs[r] = s / mat[r][r];
  }
  Vec<T> full(n, T(0));
  bool positive = true;
  for (std::size_t r = 0; r < m; ++r) {
    full[idx[r]] = xs[r];
    const int sgn = ar.sign(xs[r]);
    if (sgn == 0) out.boundary = true;
    if (sgn <= 0) positive = false;
  }
  out.solution = full;
  if (positive) out.equilibrium = Equilibrium<T>{support, std::move(full)};
  return out;
}

template <class T>
std::vector<Equilibrium<T>> enumerate_equilibria(const LVSystem<T>& sys) {
  const std::size_t n = sys.dim();
  if (n > kMaxEnumerationSpecies) throw Error(Errc::InvalidArgument, "equilibrium enumeration is limited to 20 species");
  std::vector<IndexSet> supports;
  supports.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) supports.emplace_back(mask);
  std::sort(supports.begin(), supports.end(), [](IndexSet a, IndexSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_vector() < b.to_vector();
  });
  std::vector<Equilibrium<T>> out;
  for (IndexSet s : supports)
    if (auto eq = solve_support_equilibrium(sys, s)) out.push_back(std::move(*eq));
  return out;
}

template <class T>
std::optional<Vec<T>> pairwise_intersection(const LVSystem<T>& sys, std::size_t i, std::size_t j) {
  if (i >= sys.dim() || j >= sys.dim()) throw Error(Errc::InvalidArgument, "species index out of range");
  if (i == j) throw Error(Errc::InvalidArgument, "pairwise intersection needs distinct species");
  const auto& ar = sys.arith();
  const T den = sys.a(i, i) * sys.a(j, j) - sys.a(i, j) * sys.a(j, i);
  if (ar.sign(den) <= 0) return std::nullopt;
  T ei = (sys.a(j, j) - sys.a(i, j)) / den;
  T ej = (sys.a(i, i) - sys.a(j, i)) / den;
  if (ar.sign(ei) <= 0 || ar.sign(ej) <= 0) return std::nullopt;
  Vec<T> p(sys.dim(), T(0));
  p[i] = std::move(ei);
  p[j] = std::move(ej);
  return p;
}

#define LV_INSTANTIATE(T)                                                                         \
  template SupportSolve<T> solve_support<T>(const LVSystem<T>&, IndexSet);                        \
  template std::vector<Equilibrium<T>> enumerate_equilibria<T>(const LVSystem<T>&);               \
  template std::optional<Vec<T>> pairwise_intersection<T>(const LVSystem<T>&, std::size_t, std::size_t);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
