#pragma once

// Numerical cross-check of verdicts: a positivity-preserving integrator,
// empirical limit estimates and a convergence report against a verdict.

#include <cstdint>
#include <optional>
#include <vector>

#include "lv/analyzer.hpp"

namespace lv {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec<double>> states;
};

/// Fixed-step RK4 on log x for the positive components; components that
/// start at zero stay exactly zero. Every `stride`-th step is stored, plus
/// the initial and final states. The last step is shortened to land on t_end.
/// Throws Errc::Numeric if the state stops being finite.
Trajectory integrate(const LVSystem<double>& sys, const Vec<double>& x0, double t_end, double dt,
                     std::size_t stride = 1);

struct EmpiricalLimits {
  Vec<double> liminf;
  Vec<double> limsup;
};

/// Componentwise min / max over the last `tail_fraction` of the stored samples.
EmpiricalLimits empirical_limits(const Trajectory& traj, double tail_fraction = 0.5);

/// Interior starting points drawn log-uniformly in [1e-3 Y_i, 2 Y_i].
std::vector<Vec<double>> random_starts(const LVSystem<double>& sys, std::size_t samples, std::uint64_t seed);

struct VerifyOptions {
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  double t_end = 1000.0;
  double dt = 1e-2;
  std::size_t stride = 10;
  /// Convergence tolerance on the relative max-norm distance to the attractor.
  double tol = 1e-6;
  double tail_fraction = 0.5;
  /// Slack allowed between an empirical limsup and the ultimate bound.
  double upper_slack = 1e-3;
  /// A run respects a survival margin delta if its liminf is >= lower_factor * delta.
  double lower_factor = 0.5;
};

struct RunSummary {
  Vec<double> start;
  Vec<double> final_state;
  EmpiricalLimits limits;
  /// max_i |x_i(t_end) - x*_i| / max(1, |x*_i|); absent without an attractor.
  std::optional<double> distance;
};

struct SimReport {
  std::vector<RunSummary> runs;
  /// Every run ended within tol of the attractor (false without an attractor).
  bool converged = false;
  double max_distance = 0.0;
  /// max over runs and species of limsup_i - U_i.
  double max_upper_excess = 0.0;
  bool upper_ok = true;
  /// Species with a guaranteed gain delta_i, and whether each run's liminf
  /// stayed at or above it.
  std::vector<std::size_t> margin_species;
  Vec<double> margins;
  bool lower_ok = true;
};

/// Simulates from random interior starts (and from `extra_starts`) and
/// compares the empirical behaviour with `attractor`, the ultimate bound
/// `upper` and the per-species survival margins `lower` (nullopt entries skipped).
SimReport verify_attractor(const LVSystem<double>& sys, const std::optional<Vec<double>>& attractor,
                           const Vec<double>& upper, const std::vector<std::optional<double>>& lower,
                           const VerifyOptions& options, const std::vector<Vec<double>>& extra_starts = {});

/// Runs verify_attractor against a verdict: the attractor, the ultimate bound
/// and the case-A survival margins of the survivors computed from zero under
/// the verdict's certified bound.
template <class T>
SimReport verify_verdict(const LVSystem<T>& sys, const Verdict<T>& verdict, const VerifyOptions& options,
                         const std::vector<Vec<double>>& extra_starts = {});

}  // namespace lv
