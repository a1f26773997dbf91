#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace totime {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "p/q", "n", "-n", decimals ("0.25") and scientific literals ("1e-9") exactly.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "n" when the denominator is 1.
std::string format_rational(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);

/// Largest multiple of 2^-bits not above q (resp. smallest not below).
Rational round_down(const Rational& q, unsigned bits);
Rational round_up(const Rational& q, unsigned bits);

long double to_long_double(const Rational& q);

/// Closed rational interval [lo, hi] used for certified enclosures.
struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

/// Certified enclosure of exp(-x) for rational x >= 0 with width at most `tol`.
Enclosure exp_neg_enclosure(const Rational& x, const Rational& tol);

}  // namespace totime
