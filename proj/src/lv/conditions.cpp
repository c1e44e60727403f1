#include "lv/conditions.hpp"

#include <algorithm>
#include <numeric>

namespace lv {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

template <class T>
void record(ConditionReport<T>& report, const Arith<T>& arith, std::string label, T lhs, Relation rel, T rhs) {
  bool holds = false;
  T slack(0);
  bool strict = false;
  switch (rel) {
    case Relation::Less: holds = arith.lt(lhs, rhs); slack = rhs - lhs; strict = true; break;
    case Relation::LessEqual: holds = arith.le(lhs, rhs); slack = rhs - lhs; break;
    case Relation::Greater: holds = arith.gt(lhs, rhs); slack = lhs - rhs; strict = true; break;
    case Relation::GreaterEqual: holds = arith.ge(lhs, rhs); slack = lhs - rhs; break;
    case Relation::Equal: {
      holds = arith.eq(lhs, rhs);
      T d = lhs - rhs;
      slack = d < 0 ? T(-d) : d;
      slack = -slack;
      break;
    }
  }
  if (strict && !holds && arith.eq(lhs, rhs)) report.boundary = true;
  if (report.details.empty() || slack < report.margin) report.margin = slack;
  report.holds = report.holds && holds;
  report.details.push_back(Inequality<T>{std::move(label), std::move(lhs), rel, std::move(rhs), holds});
}

namespace {

std::string idx(std::size_t i) { return std::to_string(i + 1); }

template <class T>
void require_index(const LVSystem<T>& sys, std::size_t i) {
  if (i >= sys.dim()) throw Error(Errc::InvalidArgument, "species index " + std::to_string(i + 1) + " out of range");
}

template <class T>
T ratio_sum_excluding(const LVSystem<T>& sys, std::size_t row, std::size_t skip1, std::size_t skip2) {
  T s(0);
  for (std::size_t k = 0; k < sys.dim(); ++k)
    if (k != skip1 && k != skip2) s += sys.a(row, k) / sys.a(k, k);
  return s;
}

/// Row `lead` dominates the remaining community `rest` (which excludes lead).
template <class T>
bool dominates(const LVSystem<T>& sys, std::size_t lead, IndexSet rest) {
  const auto& ar = sys.arith();
  const auto r = rest.to_vector();
  for (std::size_t k : r) {
    if (!ar.lt(sys.a(k, lead), sys.a(lead, lead))) return false;
    for (std::size_t j : r)
      if (!ar.le(sys.a(k, j), sys.a(lead, j))) return false;
  }
  return true;
}

}  // namespace

template <class T>
ConditionReport<T> persistence_algebraic(const LVSystem<T>& sys, const Vec<T>& bound, std::size_t k, IndexSet active,
                                         std::string bound_label) {
  require_index(sys, k);
  if (bound.size() != sys.dim()) throw Error(Errc::Dimension, "bound length mismatch");
  const auto& ar = sys.arith();
  ConditionReport<T> rep;
  rep.name = "persistence_algebraic";
  rep.indices = {k};
  rep.bound = std::move(bound_label);
  rep.active = active;
  const auto peers = active.without(k).to_vector();
  if (peers.empty()) {
    record(rep, ar, "row_" + idx(k) + " . 0 < 1", T(0), Relation::Less, T(1));
    return rep;
  }
  for (std::size_t j : peers) {
    const Vec<T> w = project_support(bound, active.without(k).without(j));
    const T load_j = sys.row_dot(j, w);
    const T load_k = sys.row_dot(k, w);
    T lhs = sys.a(k, j) / sys.a(j, j) * (T(1) - load_j);
    if (lhs < 0) lhs = T(0);
    record(rep, ar, "j=" + idx(j), std::move(lhs), Relation::Less, T(1) - load_k);
  }
  return rep;
}

template <class T>
ConditionReport<T> persistence_geometric(const LVSystem<T>& sys, const Vec<T>& bound, std::size_t k, IndexSet active,
                                         std::string bound_label) {
  require_index(sys, k);
  if (bound.size() != sys.dim()) throw Error(Errc::Dimension, "bound length mismatch");
  const auto& ar = sys.arith();
  ConditionReport<T> rep;
  rep.name = "persistence_geometric";
  rep.indices = {k};
  rep.bound = std::move(bound_label);
  rep.active = active;

  const auto peers = active.without(k).to_vector();
  const Vec<T> corner = project_support(bound, active.without(k));
  const T load = sys.row_dot(k, corner);
  if (ar.lt(load, T(1))) {
    rep.clause = "below";
    record(rep, ar, "row_" + idx(k) + " . corner", load, Relation::Less, T(1));
    return rep;
  }

  rep.clause = "above";
  const Cell<T> cell = Cell<T>::from_origin(corner);
  const Plane<T> own = Plane<T>::nullcline(sys, k);
  const auto slice = cell_plane_vertices(cell, own, ar);

  // Primary phrasing: every vertex of the slice of nullcline k is above every peer nullcline.
  bool above_all = true;
  for (std::size_t j : peers) {
    std::optional<T> lowest;
    for (const auto& v : slice) {
      T s = sys.row_dot(j, v);
      if (!lowest || s < *lowest) lowest = std::move(s);
    }
    if (!lowest) continue;
    above_all = above_all && set_position(slice, Plane<T>::nullcline(sys, j), ar) == SetPosition::Above;
    record(rep, ar, "min row_" + idx(j) + " . slice_" + idx(k), *lowest, Relation::Greater, T(1));
  }
  if (slice.empty()) above_all = false;

  // Dual phrasing: every peer slice is nonempty and below nullcline k.
  bool peers_below = true;
  for (std::size_t j : peers) {
    const auto peer_slice = cell_plane_vertices(cell, Plane<T>::nullcline(sys, j), ar);
    if (peer_slice.empty() || set_position(peer_slice, own, ar) != SetPosition::Below) {
      peers_below = false;
      break;
    }
  }
  if (above_all != peers_below)
    throw Error(Errc::Inconsistent, "geometric persistence phrasings disagree for species " + idx(k));
  rep.holds = above_all;
  return rep;
}

template <class T>
ConditionReport<T> row_sum_criterion(const LVSystem<T>& sys, std::size_t i) {
  require_index(sys, i);
  ConditionReport<T> rep;
  rep.name = "row_sum";
  rep.indices = {i};
  T s(0);
  for (std::size_t j = 0; j < sys.dim(); ++j) s += sys.a(i, j) / sys.a(j, j);
  record(rep, sys.arith(), "sum_j a_" + idx(i) + "j / a_jj", std::move(s), Relation::Less, T(2));
  return rep;
}

template <class T>
ConditionReport<T> pairwise_criterion(const LVSystem<T>& sys, std::size_t i, std::size_t j) {
  require_index(sys, i);
  require_index(sys, j);
  if (i == j) throw Error(Errc::InvalidArgument, "pairwise criterion needs distinct species");
  ConditionReport<T> rep;
  rep.name = "pairwise";
  rep.indices = {i, j};
  T lhs = sys.a(i, j) / sys.a(j, j) * (T(1) - ratio_sum_excluding(sys, j, i, j));
  if (lhs < 0) lhs = T(0);
  record(rep, sys.arith(), "i=" + idx(i) + ",j=" + idx(j), std::move(lhs), Relation::Less,
         T(1) - ratio_sum_excluding(sys, i, i, j));
  return rep;
}

template <class T>
ConditionReport<T> ordered_exclusion_criterion(const LVSystem<T>& sys) {
  ConditionReport<T> rep;
  rep.name = "ordered_exclusion";
  const std::size_t n = sys.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      T lhs = T(static_cast<long>(i) - static_cast<long>(j)) * (sys.a(i, j) - sys.a(j, j));
      record(rep, sys.arith(), "(" + idx(i) + "-" + idx(j) + ")(a_" + idx(i) + idx(j) + "-a_" + idx(j) + idx(j) + ")",
             std::move(lhs), Relation::Greater, T(0));
    }
  return rep;
}

template <class T>
ConditionReport<T> chain_dominance_criterion(const LVSystem<T>& sys, const std::vector<std::size_t>& ordering) {
  const std::size_t n = sys.dim();
  {
    std::vector<std::size_t> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw Error(Errc::InvalidArgument, "ordering must be a permutation of all species");
  }
  ConditionReport<T> rep;
  rep.name = "chain_dominance";
  rep.indices = ordering;
  const auto& ar = sys.arith();
  auto a = [&](std::size_t p, std::size_t q) { return sys.a(ordering[p], ordering[q]); };
  auto lab = [&](std::size_t p, std::size_t q) { return "a_" + idx(ordering[p]) + "," + idx(ordering[q]); };
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t l = 0; l < j; ++l) record(rep, ar, lab(j, l) + " < " + lab(l, l), a(j, l), Relation::Less, a(l, l));
    for (std::size_t p = j; p >= 1; --p)
      record(rep, ar, lab(p, j) + " <= " + lab(p - 1, j), a(p, j), Relation::LessEqual, a(p - 1, j));
  }
  if (rep.details.empty()) rep.margin = T(0);
  return rep;
}

template <class T>
ConditionReport<T> extinction_order_criterion(const LVSystem<T>& sys, const std::vector<std::size_t>& order) {
  const std::size_t n = sys.dim();
  IndexSet removed;
  for (std::size_t e : order) {
    require_index(sys, e);
    if (removed.contains(e)) throw Error(Errc::InvalidArgument, "extinction order repeats a species");
    removed = removed.with(e);
  }
  ConditionReport<T> rep;
  rep.name = "extinction_order";
  rep.indices = order;
  const auto& ar = sys.arith();
  IndexSet rest = IndexSet::all(n);
  for (std::size_t e : order) {
    rest = rest.without(e);
    const auto r = rest.to_vector();
    for (std::size_t k : r) {
      record(rep, ar, "a_" + idx(k) + "," + idx(e) + " < a_" + idx(e) + "," + idx(e), sys.a(k, e), Relation::Less,
             sys.a(e, e));
      for (std::size_t j : r)
        record(rep, ar, "a_" + idx(k) + "," + idx(j) + " <= a_" + idx(e) + "," + idx(j), sys.a(k, j),
               Relation::LessEqual, sys.a(e, j));
    }
  }
  if (rep.details.empty()) rep.margin = T(0);
  return rep;
}

template <class T>
std::optional<std::vector<std::size_t>> find_chain_ordering(const LVSystem<T>& sys, OrderingSearch search) {
  const std::size_t n = sys.dim();
  if (search == OrderingSearch::Exhaustive) {
    if (n > 8) throw Error(Errc::InvalidArgument, "exhaustive ordering search is limited to 8 species");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      if (chain_dominance_criterion(sys, perm).holds) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }

  // At most one species can dominate the rest at each step, so greedy is complete.
  std::vector<std::size_t> order;
  IndexSet rest = IndexSet::all(n);
  while (rest.size() > 1) {
    std::optional<std::size_t> next;
    for (std::size_t j : rest.to_vector())
      if (dominates(sys, j, rest.without(j))) {
        next = j;
        break;
      }
    if (!next) return std::nullopt;
    order.push_back(*next);
    rest = rest.without(*next);
  }
  order.push_back(rest.to_vector().front());
  if (!chain_dominance_criterion(sys, order).holds) return std::nullopt;
  return order;
}

#define LV_INSTANTIATE(T)                                                                                          \
  template void record<T>(ConditionReport<T>&, const Arith<T>&, std::string, T, Relation, T);                      \
  template ConditionReport<T> persistence_algebraic<T>(const LVSystem<T>&, const Vec<T>&, std::size_t, IndexSet,   \
                                                       std::string);                                               \
  template ConditionReport<T> persistence_geometric<T>(const LVSystem<T>&, const Vec<T>&, std::size_t, IndexSet,   \
                                                       std::string);                                               \
  template ConditionReport<T> row_sum_criterion<T>(const LVSystem<T>&, std::size_t);                               \
  template ConditionReport<T> pairwise_criterion<T>(const LVSystem<T>&, std::size_t, std::size_t);                 \
  template ConditionReport<T> ordered_exclusion_criterion<T>(const LVSystem<T>&);                                  \
  template ConditionReport<T> chain_dominance_criterion<T>(const LVSystem<T>&, const std::vector<std::size_t>&);   \
  template ConditionReport<T> extinction_order_criterion<T>(const LVSystem<T>&, const std::vector<std::size_t>&);  \
  template std::optional<std::vector<std::size_t>> find_chain_ordering<T>(const LVSystem<T>&, OrderingSearch);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
