#include <doctest.h>

#include "lv/bounds.hpp"
#include "lv/conditions.hpp"
#include "lv/equilibria.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lv;
using lvtest::q;
using lvtest::qv;

TEST_SUITE("equilibria") {

TEST_CASE("support equilibria of the worked systems") {
  auto full = solve_support_equilibrium(lvtest::interior3(), IndexSet::all(3));
  REQUIRE(full);
  CHECK(full->point == qv({"1/23", "11/46", "11/46"}));
  auto pair = solve_support_equilibrium(lvtest::boundary4(), IndexSet{0, 1});
  REQUIRE(pair);
  CHECK(pair->point == qv({"1/4", "1/4", "0", "0"}));
  auto axis = solve_support_equilibrium(lvtest::boundary4(), IndexSet{2});
  REQUIRE(axis);
  CHECK(axis->point == qv({"0", "0", "1/2", "0"}));
  auto origin = solve_support(lvtest::interior3(), IndexSet{});
  REQUIRE(origin.equilibrium);
  CHECK(origin.equilibrium->point == Vec<Rational>(3, Rational(0)));
}

TEST_CASE("singular and boundary supports") {
  auto flat = lvtest::make({{"1", "1"}, {"1", "1"}});
  auto s = solve_support(flat, IndexSet{0, 1});
  CHECK_FALSE(s.nonsingular);
  CHECK_FALSE(s.equilibrium);

  // x_2 solves to exactly zero on the pair support.
  auto edge = lvtest::make({{"1", "1"}, {"1", "2"}});
  auto b = solve_support(edge, IndexSet{0, 1});
  CHECK(b.nonsingular);
  CHECK(b.boundary);
  CHECK_FALSE(b.equilibrium);
  REQUIRE(b.solution);
  CHECK((*b.solution)[1] == 0);
}

TEST_CASE("census of equilibria") {
  auto eqs = enumerate_equilibria(lvtest::interior3());
  CHECK(eqs.size() == 8);
  CHECK(eqs.front().support.empty());
  auto id = enumerate_equilibria(lvtest::identity(3));
  REQUIRE(id.size() == 8);
  for (const auto& e : id)
    for (std::size_t i = 0; i < 3; ++i) CHECK(e.point[i] == (e.support.contains(i) ? 1 : 0));

  // The pair {1,2} solves to a negative component here.
  auto fewer = lvtest::make({{"1", "1/4", "0"}, {"2", "1", "0"}, {"0", "0", "1"}});
  auto f = enumerate_equilibria(fewer);
  CHECK(f.size() == 6);  // {1,2} and {1,2,3} solve to x_2 = -2
}

TEST_CASE("equilibria match Cramer's rule") {
  lvtest::SystemGenerator gen(303);
  for (int t = 0; t < 150; ++t) {
    auto sys = gen.mixed(static_cast<std::size_t>(gen.pick(2, 4)));
    const std::size_t n = sys.dim();
    for (std::uint64_t bits = 1; bits < (1u << n); ++bits) {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < n; ++i)
        if (bits >> i & 1) support.push_back(i);
      auto mine = solve_support_equilibrium(sys, IndexSet::from(support));
      auto ref = lvtest::oracle::equilibrium(sys, support);
      REQUIRE(mine.has_value() == ref.has_value());
      if (mine) {
        CHECK(mine->point == *ref);
        for (std::size_t j : support) CHECK(sys.row_dot(j, mine->point) == 1);
      }
    }
  }
}

TEST_CASE("float solves agree with exact ones") {
  lvtest::SystemGenerator gen(7);
  for (int t = 0; t < 100; ++t) {
    auto sys = gen.mixed(3);
    auto fsys = to_double(sys);
    auto exact = solve_support_equilibrium(sys, IndexSet::all(3));
    auto approx = solve_support_equilibrium(fsys, IndexSet::all(3));
    if (!exact || !approx) continue;
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(approx->point[i] - to_double(exact->point[i])) <= 1e-12);
  }
}

TEST_CASE("persistence of every species puts face equilibria below the missing nullcline") {
  lvtest::SystemGenerator gen(1234);
  int seen = 0;
  for (int t = 0; t < 300 && seen < 30; ++t) {
    auto sys = gen.mixed(static_cast<std::size_t>(gen.pick(3, 4)));
    auto u = ultimate_upper_bound(sys);
    bool all = true;
    for (std::size_t k = 0; k < sys.dim(); ++k) all = all && persistence_algebraic(sys, u, k, IndexSet::all(sys.dim())).holds;
    if (!all) continue;
    ++seen;
    auto eqs = enumerate_equilibria(sys);
    CHECK(eqs.size() == (std::size_t{1} << sys.dim()));
    for (const auto& e : eqs)
      for (std::size_t k = 0; k < sys.dim(); ++k)
        if (!e.support.contains(k)) CHECK(sys.row_dot(k, e.point) < 1);
  }
  CHECK(seen >= 10);
}

TEST_CASE("pairwise nullcline intersections") {
  auto p = pairwise_intersection(lvtest::interior3(), 0, 1);
  REQUIRE(p);
  CHECK(*p == qv({"1/4", "1/4", "0"}));
  auto id = pairwise_intersection(lvtest::identity(3), 0, 2);
  REQUIRE(id);
  CHECK(*id == qv({"1", "0", "1"}));
  auto s4 = lvtest::boundary4();
  auto p13 = pairwise_intersection(s4, 0, 2);
  REQUIRE(p13);
  CHECK(*p13 == qv({"1/3", "0", "1/6", "0"}));
  CHECK(s4.row_dot(0, *p13) == 1);
  CHECK(s4.row_dot(2, *p13) == 1);
  CHECK_THROWS_AS(pairwise_intersection(s4, 1, 1), Error);
  CHECK_FALSE(pairwise_intersection(lvtest::make({{"1", "2"}, {"1/2", "1"}}), 0, 1));
}

TEST_CASE("enumeration guard") { CHECK_THROWS_AS(enumerate_equilibria(lvtest::identity(21)), Error); }

}
