#pragma once

// Ultimate bounds for interior solutions: the carrying-capacity point, the
// two-dimensional-intersection upper bound, its simplified closed form, the
// lower-to-upper and contraction refinement steps, the extinction cascade and
// the survival margin derived from a pair of bounds.

#include <optional>
#include <vector>

#include "lv/core.hpp"

namespace lv {

/// Which (j, k) index pairs enter the maximum of the third branch of the
/// ultimate bound. The diagonal variant (j == k admitted) is the default; the
/// strict variant is kept for comparison only.
enum class PairRule { IncludeDiagonal, DistinctOnly };

/// Component i is 1 / a_ii.
template <class T>
Vec<T> carrying_capacities(const LVSystem<T>& sys);

/// Ultimate upper bound computed on the subcommunity `active`; inactive
/// components are 0. A singleton community gets its carrying capacity.
template <class T>
Vec<T> ultimate_upper_bound(const LVSystem<T>& sys, IndexSet active, PairRule rule = PairRule::IncludeDiagonal);

template <class T>
Vec<T> ultimate_upper_bound(const LVSystem<T>& sys) {
  return ultimate_upper_bound(sys, IndexSet::all(sys.dim()));
}

/// Closed form using only pairwise nullcline intersections. Applies when
/// every carrying-capacity point lies below the other nullclines and each
/// pair is either row-dominated or meets at a point below the remaining
/// nullclines; std::nullopt otherwise.
template <class T>
std::optional<Vec<T>> ultimate_upper_bound_simplified(const LVSystem<T>& sys);

/// Upper bound implied by a known ultimate lower bound:
/// y_j = max(0, x_j + (1 - row_j . x) / a_jj). Throws Errc::Precondition if
/// some x_i > 0 while row_i . x > 1.
template <class T>
Vec<T> refine_upper_from_lower(const LVSystem<T>& sys, const Vec<T>& lower);

template <class T>
struct BoundsState {
  Vec<T> lower;
  Vec<T> upper;
};

/// One contraction step on a pair of ultimate bounds. Indices in `converged`
/// are known to tend to their lower value, so their upper value is pinned to
/// it before contracting. Result z satisfies lower <= z <= upper.
template <class T>
Vec<T> contract_upper_bound(const LVSystem<T>& sys, const BoundsState<T>& state, IndexSet converged = {});

template <class T>
struct CascadeResult {
  std::vector<std::size_t> extinct;  // discovery order
  Vec<T> bound;
};

/// Repeatedly removes species whose ultimate bound is zero and recomputes the
/// bound on the remaining community.
template <class T>
CascadeResult<T> extinction_cascade(const LVSystem<T>& sys);

template <class T>
struct SurvivalMargin {
  enum class Kind { Quantitative, Existence };
  Kind kind;
  std::optional<T> delta;  // set only for Quantitative
};

/// Guaranteed gain of species i over `lower` given ultimate bounds
/// lower <= liminf <= limsup <= upper. Quantitative when the corner
/// lower^{i} + upper^{others} is below the nullcline of i (delta returned);
/// Existence when instead the nullcline slice of that cell lies above every
/// other undetermined nullcline; std::nullopt when neither applies.
/// Throws Errc::Precondition unless upper_i > lower_i.
template <class T>
std::optional<SurvivalMargin<T>> survival_margin(const LVSystem<T>& sys, const Vec<T>& lower, const Vec<T>& upper,
                                                 std::size_t i);

}  // namespace lv
