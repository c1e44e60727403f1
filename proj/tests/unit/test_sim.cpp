#include <doctest.h>

#include <cmath>

#include "lv/sim.hpp"
#include "support/fixtures.hpp"

using namespace lv;

namespace {

double max_abs_diff(const Vec<double>& a, const Vec<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const Vec<double> kInteriorStar{1.0 / 23, 11.0 / 46, 11.0 / 46};

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("equilibrium start stays put") {
  auto sys = to_double(lvtest::interior3());
  auto traj = integrate(sys, kInteriorStar, 100.0, 1e-2, 100);
  for (const auto& s : traj.states) CHECK(max_abs_diff(s, kInteriorStar) < 1e-10);
}

TEST_CASE("logistic growth reaches its capacity") {
  LVSystem<double> sys({1.0}, {{2.0}});
  auto traj = integrate(sys, {0.1}, 50.0, 1e-2);
  CHECK(traj.times.back() == 50.0);
  CHECK(std::abs(traj.states.back()[0] - 0.5) < 1e-8);
  // Closed form at t = 1.
  double expect = 0.5 / (1.0 + (0.5 / 0.1 - 1.0) * std::exp(-1.0));
  CHECK(std::abs(traj.states[100][0] - expect) < 1e-10);
}

TEST_CASE("three-species trajectory converges to the interior attractor") {
  auto sys = to_double(lvtest::interior3());
  auto traj = integrate(sys, {0.3, 0.1, 0.4}, 500.0, 1e-2, 100);
  CHECK(max_abs_diff(traj.states.back(), kInteriorStar) < 1e-6);
}

TEST_CASE("trajectory shape") {
  auto sys = to_double(lvtest::interior3());
  auto traj = integrate(sys, {0.3, 0.1, 0.4}, 1.005, 1e-2, 10);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 1.005);
  for (std::size_t k = 1; k < traj.times.size(); ++k) CHECK(traj.times[k] > traj.times[k - 1]);
  CHECK(traj.times.size() == traj.states.size());
  CHECK(traj.times.size() == 12);  // start, ten strided samples, final partial step
}

TEST_CASE("positivity and face invariance") {
  auto sys = to_double(lvtest::cascade5());
  auto traj = integrate(sys, {1e-3, 0.2, 0.0, 0.4, 0.3}, 200.0, 5e-2, 20);
  for (const auto& s : traj.states) {
    CHECK(s[2] == 0.0);
    for (std::size_t i : {0u, 1u, 3u, 4u}) CHECK(s[i] > 0.0);
  }
}

TEST_CASE("halving the step barely moves the end state") {
  for (const auto& rsys : {lvtest::interior3(), lvtest::boundary4(), lvtest::cascade5()}) {
    auto sys = to_double(rsys);
    Vec<double> x0(sys.dim(), 0.2);
    auto a = integrate(sys, x0, 50.0, 1e-2, 1000);
    auto b = integrate(sys, x0, 50.0, 5e-3, 1000);
    CHECK(max_abs_diff(a.states.back(), b.states.back()) < 1e-8);
  }
}

TEST_CASE("integration argument checks") {
  auto sys = to_double(lvtest::interior3());
  CHECK_THROWS_AS(integrate(sys, {0.1, 0.1}, 1.0, 0.1), Error);
  CHECK_THROWS_AS(integrate(sys, {0.1, -0.1, 0.1}, 1.0, 0.1), Error);
  CHECK_THROWS_AS(integrate(sys, {0.1, 0.1, 0.1}, 1.0, 0.0), Error);
  CHECK_THROWS_AS(integrate(sys, {0.1, 0.1, 0.1}, 1.0, 0.1, 0), Error);
}

TEST_CASE("empirical limits") {
  Trajectory flat{{0.0, 1.0, 2.0}, {kInteriorStar, kInteriorStar, kInteriorStar}};
  auto lim = empirical_limits(flat, 0.5);
  CHECK(lim.liminf == kInteriorStar);
  CHECK(lim.limsup == kInteriorStar);

  // Damped oscillation: the window shrinks with the tail fraction.
  Trajectory osc;
  for (int k = 0; k <= 1000; ++k) {
    double t = k * 0.1;
    osc.times.push_back(t);
    osc.states.push_back({1.0 + std::exp(-0.05 * t) * std::cos(t)});
  }
  auto wide = empirical_limits(osc, 0.8), narrow = empirical_limits(osc, 0.2);
  CHECK(narrow.limsup[0] - narrow.liminf[0] < wide.limsup[0] - wide.liminf[0]);
  CHECK(narrow.liminf[0] <= narrow.limsup[0]);
  CHECK_THROWS_AS(empirical_limits(osc, 0.0), Error);
  CHECK_THROWS_AS(empirical_limits(Trajectory{}, 0.5), Error);
}

TEST_CASE("random starts are seeded and inside the sampling box") {
  auto sys = to_double(lvtest::interior3());
  auto a = random_starts(sys, 20, 7), b = random_starts(sys, 20, 7), c = random_starts(sys, 20, 8);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& x : a)
    for (std::size_t i = 0; i < 3; ++i) {
      double cap = 1.0 / sys.a(i, i);
      CHECK(x[i] >= 1e-3 * cap);
      CHECK(x[i] <= 2.0 * cap);
    }
}

TEST_CASE("verification of the worked verdicts") {
  VerifyOptions opt;
  opt.samples = 5;
  auto sys = lvtest::interior3();
  auto rep = verify_verdict(sys, analyze(sys), opt);
  CHECK(rep.converged);
  CHECK(rep.upper_ok);
  CHECK(rep.lower_ok);
  CHECK(rep.max_upper_excess <= 1e-3);
  REQUIRE_FALSE(rep.margin_species.empty());

  auto sys5 = lvtest::cascade5();
  auto rep5 = verify_verdict(sys5, analyze(sys5), opt);
  CHECK(rep5.converged);
  for (const auto& run : rep5.runs) {
    CHECK(run.final_state[3] < 1e-6);
    CHECK(run.final_state[4] < 1e-6);
  }
}

TEST_CASE("a wrong attractor is not confirmed") {
  auto sys = lvtest::interior3();
  auto v = analyze(sys);
  (*v.attractor)[0] += Rational(1, 10);
  VerifyOptions opt;
  opt.samples = 3;
  CHECK_FALSE(verify_verdict(sys, v, opt).converged);
}

TEST_CASE("species without competition from the first keeps it alive") {
  // Companion of the contraction-step check in the bounds tests.
  LVSystem<double> sys({1.0, 1.0}, {{1.0, 0.5}, {0.0, 1.0}});
  auto traj = integrate(sys, {0.01, 0.01}, 200.0, 1e-2, 100);
  CHECK(std::abs(traj.states.back()[0] - 0.5) < 1e-8);
  CHECK(std::abs(traj.states.back()[1] - 1.0) < 1e-8);
}

}
