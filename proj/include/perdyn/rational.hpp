#ifndef PERDYN_RATIONAL_HPP
#define PERDYN_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace perdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "p" or a decimal like "0.01" (optional leading sign). Throws InvalidInput.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Number of bits in |n| (0 for n == 0).
std::size_t bit_length(const BigInt& n);

// Decimal expansion of r with exactly `places` digits after the point,
// rounding half to even.
std::string to_decimal(const Rational& r, int places);

// Decimal expansion rounded toward +infinity.
std::string to_decimal_up(const Rational& r, int places);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace perdyn

#endif // PERDYN_RATIONAL_HPP
