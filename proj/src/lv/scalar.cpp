#include "lv/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "lv/error.hpp"

namespace lv {

std::string format(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return r.str();
}

std::string format(double d) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
  if (ec != std::errc{}) throw Error(Errc::Numeric, "cannot format double");
  return std::string(buf.data(), end);
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

using Integer = boost::multiprecision::mpz_int;

// Base-10 digits only; a leading zero would otherwise select octal.
Integer from_digits(const std::string& digits) {
  auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
}

Integer pow10(long e) {
  Integer p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

Rational parse_decimal(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string::npos) {
    std::string exp_text = s.substr(epos + 1);
    s.resize(epos);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text[0] == '-' || exp_text[0] == '+')) {
      exp_negative = exp_text[0] == '-';
      exp_text.erase(0, 1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) throw Error(Errc::Parse, "malformed exponent in '" + text + "'");
    exponent = std::stol(exp_text);
    if (exp_negative) exponent = -exponent;
  }
  std::string int_part = s;
  std::string frac_part;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw Error(Errc::Parse, "malformed number '" + text + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw Error(Errc::Parse, "malformed number '" + text + "'");

  Integer mantissa = from_digits(int_part + frac_part);
  exponent -= static_cast<long>(frac_part.size());
  Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) throw Error(Errc::Parse, "malformed rational '" + text + "'");
    Integer d = from_digits(den);
    if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + text + "'");
    Integer n = from_digits(num_digits);
    if (!num.empty() && num[0] == '-') n = -n;
    return Rational(n, d);
  }
  return parse_decimal(text);
}

}  // namespace lv
