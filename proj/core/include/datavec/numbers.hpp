#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace datavec {

// Arbitrary-precision integers and rationals. Rationals are kept in reduced
// form with a positive denominator by the backing type.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Floor division of integers (truncates toward negative infinity; b != 0).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }
inline bool rat_is_integer(const Rat& q) { return rat_den(q) == 1; }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline std::optional<std::int64_t> to_int64(const Int& v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
    return std::nullopt;
  return v.convert_to<std::int64_t>();
}

inline std::string int_to_string(const Int& v) { return v.str(); }
inline std::string rat_to_string(const Rat& q) {
  if (rat_is_integer(q)) return rat_num(q).str();
  return rat_num(q).str() + "/" + rat_den(q).str();
}

}  // namespace datavec
