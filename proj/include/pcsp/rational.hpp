#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcsp {

/// Exact arbitrary-precision rational. Always in lowest terms with a positive
/// denominator; floating point never enters the solver path.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Accepts "n" or "n/d" with optional sign; normalizes.
Rational parse_rational(const std::string & text);

/// Reduced form; integers print without the "/1" suffix.
std::string rational_to_string(const Rational & r);

inline Rational one_third() { return Rational(1, 3); }

} // namespace pcsp
