#pragma once

#include <optional>
#include <vector>

#include "lv/core.hpp"

namespace lv {

/// Equilibrium whose strictly positive components are exactly `support`, each
/// supported species sitting on its own nullcline.
template <class T>
struct Equilibrium {
  IndexSet support;
  Vec<T> point;
};

/// Outcome of solving the restricted linear system A_JJ x_J = 1.
template <class T>
struct SupportSolve {
  IndexSet support;
  bool nonsingular = false;
  /// Solved some component to exactly zero (within eps in float mode).
  bool boundary = false;
  std::optional<Vec<T>> solution;
  std::optional<Equilibrium<T>> equilibrium;
};

/// Exact Gaussian elimination in rational mode; partial pivoting with
/// |pivot| <= eps treated as singular in float mode.
template <class T>
SupportSolve<T> solve_support(const LVSystem<T>& sys, IndexSet support);

template <class T>
std::optional<Equilibrium<T>> solve_support_equilibrium(const LVSystem<T>& sys, IndexSet support) {
  return solve_support(sys, support).equilibrium;
}

inline constexpr std::size_t kMaxEnumerationSpecies = 20;

/// All equilibria in the nonnegative orthant with a nonsingular support
/// system, the origin first, then ordered by support size and lexicographically.
template <class T>
std::vector<Equilibrium<T>> enumerate_equilibria(const LVSystem<T>& sys);

/// Meeting point of nullclines i and j inside the (x_i, x_j) coordinate plane,
/// if it exists with both coordinates positive.
template <class T>
std::optional<Vec<T>> pairwise_intersection(const LVSystem<T>& sys, std::size_t i, std::size_t j);

}  // namespace lv
