#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dbe {

/// Arbitrary-precision rational. Lattice coordinates and everything the
/// normality decision depends on (conservation checks, ranks, nullspaces)
/// are computed in this type; floating point is never trusted for the
/// discrete yes/no questions.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "3/4", "-2", "0.25" (plain decimal, no exponent) into an exact value.
/// Throws ParseError on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Formats as "num/den", or just "num" when the denominator is 1.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace dbe
