#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>

namespace lv {

using Rational = boost::multiprecision::mpq_rational;

enum class Mode { Exact, Float };

inline constexpr double kDefaultEpsilon = 1e-9;

namespace detail {

template <class Derived, class T>
struct ComparisonOps {
  bool lt(const T& a, const T& b) const { return self().compare(a, b) < 0; }
  bool le(const T& a, const T& b) const { return self().compare(a, b) <= 0; }
  bool gt(const T& a, const T& b) const { return self().compare(a, b) > 0; }
  bool ge(const T& a, const T& b) const { return self().compare(a, b) >= 0; }
  bool eq(const T& a, const T& b) const { return self().compare(a, b) == 0; }
  int sign(const T& a) const { return self().compare(a, T(0)); }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

}  // namespace detail

/// Comparison policy for a scalar type. Every strict inequality in the library
/// goes through one of these so that exact and tolerance-based runs share code.
template <class T>
struct Arith;

template <>
struct Arith<Rational> : detail::ComparisonOps<Arith<Rational>, Rational> {
  static constexpr Mode mode = Mode::Exact;

  int compare(const Rational& a, const Rational& b) const {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
  }
  /// Exact mode has no tolerance; reported as zero.
  double epsilon() const { return 0.0; }
};

template <>
struct Arith<double> : detail::ComparisonOps<Arith<double>, double> {
  static constexpr Mode mode = Mode::Float;

  double eps = kDefaultEpsilon;

  Arith() = default;
  explicit Arith(double tolerance) : eps(tolerance) {}

  // x < y means x < y - eps; x == y means |x - y| <= eps.
  int compare(double a, double b) const {
    if (a < b - eps) return -1;
    if (a > b + eps) return 1;
    return 0;
  }
  double epsilon() const { return eps; }
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

/// "p/q" (or "p" when integral) for rationals; shortest round-trip decimal for doubles.
std::string format(const Rational& r);
std::string format(double d);

/// Parses "p/q", an integer, or a decimal literal (optionally with exponent)
/// into an exact rational. Throws lv::Error(Parse) on malformed input.
Rational parse_rational(const std::string& text);

}  // namespace lv
