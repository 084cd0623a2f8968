#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tpj {

/// Exact rational scalar used throughout the polyhedral code.  Arbitrary
/// precision so vertex enumeration and simplex pivoting never round.
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// Serializes as "p/q" with the denominator always explicit, e.g. "3/2",
/// "-1/1", "0/1".  Keeping the denominator even for integers makes round
/// trips and golden files unambiguous.
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  std::string num_part = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den_part = slash == std::string::npos ? "1" : s.substr(slash + 1);
  // cpp_int("") quietly reads as zero, so reject empty pieces up front
  if (num_part.empty() || den_part.empty())
    throw std::invalid_argument("not a rational: '" + s + "'");
  try {
    boost::multiprecision::cpp_int num(num_part);
    boost::multiprecision::cpp_int den(den_part);
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

inline bool is_integral(const RationalVector& v) {
  for (const auto& r : v)
    if (!is_integral(r)) return false;
  return true;
}

}  // namespace tpj
