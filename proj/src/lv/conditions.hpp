#pragma once

// Checkers for the persistence condition (algebraic and geometric forms) and
// the classical comparison criteria. Each returns a ConditionReport listing
// every sub-inequality evaluated, so a verdict can be replayed from (b, A).

#include <optional>
#include <string>
#include <vector>

#include "lv/core.hpp"

namespace lv {

enum class Relation { Less, LessEqual, Greater, GreaterEqual, Equal };

const char* to_string(Relation r);

template <class T>
struct Inequality {
  std::string label;
  T lhs;
  Relation rel;
  T rhs;
  bool holds;
};

template <class T>
struct ConditionReport {
  std::string name;
  std::vector<std::size_t> indices;
  bool holds = true;
  /// Signed distance to the boundary of the tightest sub-inequality
  /// (positive when satisfied with room to spare).
  T margin{};
  /// Some strict sub-inequality failed only by landing on its boundary.
  bool boundary = false;
  /// Which bound vector was used ("U", "V", "Y"), for persistence checks.
  std::string bound;
  IndexSet active;
  /// For the geometric persistence check: "below" or "above".
  std::string clause;
  std::vector<Inequality<T>> details;
};

/// Builds an inequality and folds it into the report's verdict and margin.
template <class T>
void record(ConditionReport<T>& report, const Arith<T>& arith, std::string label, T lhs, Relation rel, T rhs);

/// Algebraic persistence test for species k on the community `active`, using
/// the ultimate bound `bound`: for each other active j, with W the bound
/// restricted to active \ {k, j},
///   max(0, a_kj / a_jj * (1 - row_j . W)) < 1 - row_k . W.
template <class T>
ConditionReport<T> persistence_algebraic(const LVSystem<T>& sys, const Vec<T>& bound, std::size_t k, IndexSet active,
                                         std::string bound_label = "U");

/// Geometric persistence test: the bound projected off k (and off inactive
/// species) is below nullcline k, or the slice of nullcline k in [0, bound]
/// lies above every other active nullcline. The dual phrasing (every other
/// nullcline slice lies below nullcline k) is evaluated too; disagreement
/// throws Errc::Inconsistent.
template <class T>
ConditionReport<T> persistence_geometric(const LVSystem<T>& sys, const Vec<T>& bound, std::size_t k, IndexSet active,
                                         std::string bound_label = "U");

/// sum_j a_ij / a_jj < 2.
template <class T>
ConditionReport<T> row_sum_criterion(const LVSystem<T>& sys, std::size_t i);

/// max(0, a_ij/a_jj (1 - sum_{k != i,j} a_jk/a_kk)) < 1 - sum_{k != i,j} a_ik/a_kk.
template <class T>
ConditionReport<T> pairwise_criterion(const LVSystem<T>& sys, std::size_t i, std::size_t j);

/// (i - j)(a_ij - a_jj) > 0 for all i != j: only the first species survives.
template <class T>
ConditionReport<T> ordered_exclusion_criterion(const LVSystem<T>& sys);

/// Under the species order `ordering` (ordering[0] first to go extinct):
/// a_{s_j s_l} < a_{s_l s_l} and a_{s_j s_j} <= a_{s_{j-1} s_j} <= ... <= a_{s_0 s_j}, l < j.
template <class T>
ConditionReport<T> chain_dominance_criterion(const LVSystem<T>& sys, const std::vector<std::size_t>& ordering);

/// For each step l of the extinction order and every j, k not yet removed:
/// a_{k e_l} < a_{e_l e_l} and a_{kj} <= a_{e_l j}.
template <class T>
ConditionReport<T> extinction_order_criterion(const LVSystem<T>& sys, const std::vector<std::size_t>& order);

enum class OrderingSearch { Greedy, Exhaustive };

/// Ordering satisfying the chain-dominance criterion, if one is found. The
/// exhaustive search is limited to 8 species.
template <class T>
std::optional<std::vector<std::size_t>> find_chain_ordering(const LVSystem<T>& sys, OrderingSearch search);

}  // namespace lv
