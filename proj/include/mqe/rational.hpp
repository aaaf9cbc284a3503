#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace mqe {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25" or "2.5e-1".
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// Exact conversion of a finite double.
Rational from_double(double value);

std::vector<std::string> to_strings(const RationalVector& values);
std::vector<double> to_doubles(const RationalVector& values);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Simplest fraction (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace mqe
