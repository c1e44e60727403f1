#pragma once

#include <string>
#include <vector>

#include "lv/core.hpp"

namespace lvtest {

using lv::LVSystem;
using lv::Rational;
using lv::Vec;

inline Rational q(const std::string& s) { return lv::parse_rational(s); }

inline Vec<Rational> qv(std::initializer_list<const char*> xs) {
  Vec<Rational> out;
  for (auto* x : xs) out.push_back(q(x));
  return out;
}

inline LVSystem<Rational> make(std::vector<std::vector<const char*>> rows, std::vector<const char*> growth = {}) {
  std::vector<Vec<Rational>> A;
  for (auto& r : rows) {
    Vec<Rational> row;
    for (auto* x : r) row.push_back(q(x));
    A.push_back(std::move(row));
  }
  Vec<Rational> b;
  if (growth.empty())
    b.assign(A.size(), Rational(1));
  else
    for (auto* x : growth) b.push_back(q(x));
  return LVSystem<Rational>(std::move(b), std::move(A));
}

/// Three species, all persisting.
inline LVSystem<Rational> interior3() { return make({{"2.1", "1.9", "1.9"}, {"1", "3", "1"}, {"1", "1", "3"}}); }

/// Four species, two persisting; the attractor sits on the other two nullclines.
inline LVSystem<Rational> boundary4() {
  return make({{"5/2", "3/2", "1", "3/2"}, {"1", "3", "1", "1"}, {"2", "2", "2", "2"}, {"2", "2", "1", "3"}});
}

/// Five species, two removed by the extinction cascade.
inline LVSystem<Rational> cascade5() {
  return make({{"2.1", "1.9", "1.9", "0", "1"},
               {"1", "3", "1", "2", "0"},
               {"1", "1", "3", "1", "1"},
               {"3", "3", "3", "2.1", "0"},
               {"4", "3", "3", "2.5", "2"}});
}

inline LVSystem<Rational> identity(std::size_t n) {
  std::vector<Vec<Rational>> A(n, Vec<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) A[i][i] = 1;
  return LVSystem<Rational>(Vec<Rational>(n, Rational(1)), std::move(A));
}

}  // namespace lvtest
