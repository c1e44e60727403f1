#include "lv/core.hpp"

#include <algorithm>
#include <string>
#include <type_traits>

namespace lv {

namespace {

std::string entry(const char* name, std::size_t i) { return std::string(name) + "[" + std::to_string(i + 1) + "]"; }
std::string entry(const char* name, std::size_t i, std::size_t j) {
  return std::string(name) + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

template <class T>
bool is_finite(const T& v) {
  if constexpr (std::is_same_v<T, double>) return std::isfinite(v);
  else return true;
}

}  // namespace

template <class T>
LVSystem<T>::LVSystem(Vec<T> growth, std::vector<Vec<T>> interaction, Arith<T> arith)
    : n_(growth.size()), growth_(std::move(growth)), arith_(arith) {
  if (n_ == 0) throw Error(Errc::Validation, "system must have at least one species");
  if (n_ > kMaxSpecies) throw Error(Errc::Validation, "at most 64 species are supported");
  if (interaction.size() != n_)
    throw Error(Errc::Validation, "A has " + std::to_string(interaction.size()) + " rows, expected " + std::to_string(n_));
  coeffs_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (interaction[i].size() != n_)
      throw Error(Errc::Validation, "A row " + std::to_string(i + 1) + " has " + std::to_string(interaction[i].size()) +
                                        " entries, expected " + std::to_string(n_));
    for (auto& v : interaction[i]) coeffs_.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!is_finite(growth_[i]) || !(growth_[i] > 0)) throw Error(Errc::Validation, entry("b", i) + " must be > 0");
    for (std::size_t j = 0; j < n_; ++j) {
      const T& v = a(i, j);
      if (!is_finite(v)) throw Error(Errc::Validation, entry("A", i, j) + " must be finite");
      if (i == j && !(v > 0)) throw Error(Errc::Validation, entry("A", i, j) + " must be > 0");
      if (i != j && v < 0) throw Error(Errc::Validation, entry("A", i, j) + " must be >= 0");
    }
  }
}

template <class T>
std::vector<Vec<T>> LVSystem<T>::interaction() const {
  std::vector<Vec<T>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) rows[i].assign(coeffs_.begin() + i * n_, coeffs_.begin() + (i + 1) * n_);
  return rows;
}

template <class T>
T LVSystem<T>::row_dot(std::size_t i, std::span<const T> x) const {
  if (x.size() != n_) throw Error(Errc::Dimension, "vector length does not match species count");
  return dot<T>(row(i), x);
}

template <class T>
LVSystem<T> LVSystem<T>::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw Error(Errc::Dimension, "permutation length mismatch");
  Vec<T> g(n_);
  std::vector<Vec<T>> rows(n_, Vec<T>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    g[i] = growth_[perm[i]];
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = a(perm[i], perm[j]);
  }
  return LVSystem(std::move(g), std::move(rows), arith_);
}

const char* to_string(Position p) {
  switch (p) {
    case Position::Below: return "below";
    case Position::On: return "on";
    case Position::Above: return "above";
  }
  return "?";
}

const char* to_string(SetPosition p) {
  switch (p) {
    case SetPosition::Below: return "below";
    case SetPosition::On: return "on";
    case SetPosition::Above: return "above";
    case SetPosition::Mixed: return "mixed";
  }
  return "?";
}

template <class T>
T dot(std::span<const T> u, std::span<const T> x) {
  T s(0);
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] != 0 && x[k] != 0) s += u[k] * x[k];
  return s;
}

template <class T>
Position classify_point(const Plane<T>& plane, const Vec<T>& x, const Arith<T>& arith) {
  if (plane.coeffs.size() != x.size()) throw Error(Errc::Dimension, "point and plane dimensions differ");
  int c = arith.compare(dot<T>(plane.coeffs, x), T(1));
  return c < 0 ? Position::Below : (c > 0 ? Position::Above : Position::On);
}

template <class T>
Vec<T> project_support(const Vec<T>& x, IndexSet support) {
  Vec<T> out(x.size(), T(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (support.contains(i)) out[i] = x[i];
  return out;
}

template <class T>
std::vector<Vec<T>> cell_plane_vertices(const Cell<T>& cell, const Plane<T>& plane, const Arith<T>& arith) {
  const std::size_t n = cell.lo.size();
  if (cell.hi.size() != n || plane.coeffs.size() != n) throw Error(Errc::Dimension, "cell and plane dimensions differ");
  for (std::size_t d = 0; d < n; ++d)
    if (cell.hi[d] < cell.lo[d]) throw Error(Errc::InvalidArgument, "cell has lo > hi");

  // Only coordinates with lo < hi span edges; the rest are pinned.
  std::vector<std::size_t> free;
  for (std::size_t d = 0; d < n; ++d)
    if (cell.lo[d] < cell.hi[d]) free.push_back(d);
  if (free.size() > 24) throw Error(Errc::InvalidArgument, "too many free dimensions for edge enumeration");

  std::vector<Vec<T>> out;
  auto push_unique = [&](Vec<T> p) {
    for (const auto& q : out) {
      bool same = true;
      for (std::size_t d = 0; d < n && same; ++d) same = arith.eq(p[d], q[d]);
      if (same) return;
    }
    out.push_back(std::move(p));
  };

  if (free.empty()) {
    if (arith.eq(dot<T>(plane.coeffs, cell.lo), T(1))) out.push_back(cell.lo);
    return out;
  }

  const std::size_t others = free.size() - 1;
  Vec<T> point(cell.lo);
  for (std::size_t f = 0; f < free.size(); ++f) {
    const std::size_t d = free[f];
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others); ++mask) {
      std::size_t bit = 0;
      for (std::size_t g = 0; g < free.size(); ++g) {
        if (g == f) continue;
        const std::size_t e = free[g];
        point[e] = (mask >> bit++) & 1 ? cell.hi[e] : cell.lo[e];
      }
      point[d] = T(0);
      T rest = dot<T>(plane.coeffs, point);
      const T& u = plane.coeffs[d];
      if (u == 0) {
        // Edge parallel to the plane: either inside it (both endpoints are vertices) or disjoint.
        if (arith.eq(rest, T(1))) {
          point[d] = cell.lo[d];
          push_unique(point);
          point[d] = cell.hi[d];
          push_unique(point);
        }
        continue;
      }
      T t = (T(1) - rest) / u;
      if (arith.lt(t, cell.lo[d]) || arith.gt(t, cell.hi[d])) continue;
      // Snap onto the edge in float mode so returned points stay inside the cell.
      if (t < cell.lo[d]) t = cell.lo[d];
      if (t > cell.hi[d]) t = cell.hi[d];
      point[d] = t;
      push_unique(point);
    }
    point[d] = cell.lo[d];
  }
  return out;
}

template <class T>
SetPosition set_position(const std::vector<Vec<T>>& vertices, const Plane<T>& plane, const Arith<T>& arith) {
  if (vertices.empty()) throw Error(Errc::InvalidArgument, "set_position needs a nonempty vertex list");
  bool below = true, on = true, above = true;
  for (const auto& v : vertices) {
    Position p = classify_point(plane, v, arith);
    below = below && p == Position::Below;
    on = on && p == Position::On;
    above = above && p == Position::Above;
  }
  if (below) return SetPosition::Below;
  if (on) return SetPosition::On;
  if (above) return SetPosition::Above;
  return SetPosition::Mixed;
}

std::vector<double> to_double(const Vec<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_double(r));
  return out;
}

LVSystem<double> to_double(const LVSystem<Rational>& sys, double eps) {
  std::vector<Vec<double>> rows;
  for (const auto& r : sys.interaction()) rows.push_back(to_double(r));
  return LVSystem<double>(to_double(sys.growth()), std::move(rows), Arith<double>(eps));
}

#define LV_INSTANTIATE(T)                                                                                      \
  template class LVSystem<T>;                                                                                  \
  template T dot<T>(std::span<const T>, std::span<const T>);                                                   \
  template Position classify_point<T>(const Plane<T>&, const Vec<T>&, const Arith<T>&);                       \
  template Vec<T> project_support<T>(const Vec<T>&, IndexSet);                                                 \
  template std::vector<Vec<T>> cell_plane_vertices<T>(const Cell<T>&, const Plane<T>&, const Arith<T>&);       \
  template SetPosition set_position<T>(const std::vector<Vec<T>>&, const Plane<T>&, const Arith<T>&);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
