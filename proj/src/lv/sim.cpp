#include "lv/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lv {

namespace {

void rhs(const LVSystem<double>& sys, const std::vector<bool>& live, const Vec<double>& logx, Vec<double>& x,
         Vec<double>& out) {
  const std::size_t n = sys.dim();
  for (std::size_t i = 0; i < n; ++i) x[i] = live[i] ? std::exp(logx[i]) : 0.0;
  for (std::size_t i = 0; i < n; ++i) out[i] = live[i] ? sys.b(i) * (1.0 - sys.row_dot(i, x)) : 0.0;
}

bool all_finite(const Vec<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

}  // namespace

Trajectory integrate(const LVSystem<double>& sys, const Vec<double>& x0, double t_end, double dt,
                     std::size_t stride) {
  const std::size_t n = sys.dim();
  if (x0.size() != n) throw Error(Errc::Dimension, "initial state has length " + std::to_string(x0.size()));
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(Errc::InvalidArgument, "t_end must be finite and >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(Errc::InvalidArgument, "dt must be finite and > 0");
  if (stride == 0) throw Error(Errc::InvalidArgument, "stride must be >= 1");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(x0[i]) || x0[i] < 0.0)
      throw Error(Errc::InvalidArgument, "initial state component " + std::to_string(i + 1) + " must be >= 0");

  std::vector<bool> live(n);
  Vec<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    live[i] = x0[i] > 0.0;
    if (live[i]) y[i] = std::log(x0[i]);
  }

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  Vec<double> x(n), k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  std::size_t step = 0;
  while (t < t_end) {
    double h = std::min(dt, t_end - t);
    if (h <= 0.0) break;
    rhs(sys, live, y, x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(sys, live, tmp, x, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(sys, live, tmp, x, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(sys, live, tmp, x, k4);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    ++step;
    // Avoid drift in t from repeated addition.
    t = (h < dt) ? t_end : std::min(t_end, static_cast<double>(step) * dt);
    if (!all_finite(y)) throw Error(Errc::Numeric, "integration diverged at t = " + std::to_string(t));
    bool last = t >= t_end;
    if (step % stride == 0 || last) {
      for (std::size_t i = 0; i < n; ++i) x[i] = live[i] ? std::exp(y[i]) : 0.0;
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

EmpiricalLimits empirical_limits(const Trajectory& traj, double tail_fraction) {
  if (traj.states.empty()) throw Error(Errc::InvalidArgument, "empty trajectory");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw Error(Errc::InvalidArgument, "tail fraction must be in (0, 1]");
  const std::size_t m = traj.states.size();
  std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(m))));
  EmpiricalLimits lim{traj.states.back(), traj.states.back()};
  for (std::size_t s = m - keep; s < m; ++s)
    for (std::size_t i = 0; i < lim.liminf.size(); ++i) {
      lim.liminf[i] = std::min(lim.liminf[i], traj.states[s][i]);
      lim.limsup[i] = std::max(lim.limsup[i], traj.states[s][i]);
    }
  return lim;
}

std::vector<Vec<double>> random_starts(const LVSystem<double>& sys, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = sys.dim();
  std::vector<Vec<double>> out;
  out.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      double cap = 1.0 / sys.a(i, i);
      double lo = std::log(1e-3 * cap), hi = std::log(2.0 * cap);
      x[i] = std::exp(lo + (hi - lo) * unit(rng));
    }
    out.push_back(std::move(x));
  }
  return out;
}

SimReport verify_attractor(const LVSystem<double>& sys, const std::optional<Vec<double>>& attractor,
                           const Vec<double>& upper, const std::vector<std::optional<double>>& lower,
                           const VerifyOptions& opt, const std::vector<Vec<double>>& extra_starts) {
  const std::size_t n = sys.dim();
  if (upper.size() != n || lower.size() != n) throw Error(Errc::Dimension, "bound length mismatch");
  if (attractor && attractor->size() != n) throw Error(Errc::Dimension, "attractor length mismatch");

  auto starts = random_starts(sys, opt.samples, opt.seed);
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

  SimReport rep;
  for (std::size_t i = 0; i < n; ++i)
    if (lower[i]) {
      rep.margin_species.push_back(i);
      rep.margins.push_back(*lower[i]);
    }
  rep.converged = attractor.has_value() && !starts.empty();
  rep.max_upper_excess = -std::numeric_limits<double>::infinity();

  for (const auto& x0 : starts) {
    auto traj = integrate(sys, x0, opt.t_end, opt.dt, opt.stride);
    RunSummary run{x0, traj.states.back(), empirical_limits(traj, opt.tail_fraction), std::nullopt};
    if (attractor) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        d = std::max(d, std::abs(run.final_state[i] - (*attractor)[i]) / std::max(1.0, std::abs((*attractor)[i])));
      run.distance = d;
      rep.max_distance = std::max(rep.max_distance, d);
      if (!(d <= opt.tol)) rep.converged = false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double excess = run.limits.limsup[i] - upper[i];
      rep.max_upper_excess = std::max(rep.max_upper_excess, excess);
      if (!(excess <= opt.upper_slack)) rep.upper_ok = false;
      if (lower[i] && !(run.limits.liminf[i] >= opt.lower_factor * *lower[i])) rep.lower_ok = false;
    }
    rep.runs.push_back(std::move(run));
  }
  if (starts.empty()) rep.max_upper_excess = 0.0;
  return rep;
}

template <class T>
SimReport verify_verdict(const LVSystem<T>& sys, const Verdict<T>& verdict, const VerifyOptions& opt,
                         const std::vector<Vec<double>>& extra_starts) {
  const std::size_t n = sys.dim();
  const auto& fsys = to_double(sys);
  std::optional<Vec<double>> attractor;
  if (verdict.attractor) attractor = to_double(*verdict.attractor);

  std::vector<std::optional<double>> lower(n);
  if (verdict.outcome != Outcome::Inconclusive) {
    const Vec<T>& bound = certified_bound(verdict);
    const Vec<T> zero(n, T(0));
    for (auto k : verdict.survivors.to_vector()) {
      if (!(zero[k] < bound[k])) continue;
      try {
        auto m = survival_margin(sys, zero, bound, k);
        if (m && m->delta) lower[k] = to_double(Vec<T>{*m->delta})[0];
      } catch (const Error&) {
      }
    }
  }
  return verify_attractor(fsys, attractor, to_double(verdict.certificate.ultimate), lower, opt, extra_starts);
}

template SimReport verify_verdict<Rational>(const LVSystem<Rational>&, const Verdict<Rational>&, const VerifyOptions&,
                                            const std::vector<Vec<double>>&);
template SimReport verify_verdict<double>(const LVSystem<double>&, const Verdict<double>&, const VerifyOptions&,
                                          const std::vector<Vec<double>>&);

}  // namespace lv
