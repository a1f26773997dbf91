#include <doctest.h>

#include <cmath>

#include "totime/error.hpp"
#include "totime/rational.hpp"

using namespace totime;

TEST_CASE("parsing accepts fractions, integers, decimals and exponents exactly") {
  CHECK(parse_rational("1/4") == Rational(1, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1e-9") == Rational(1, 1000000000));
  CHECK(parse_rational("2.5E2") == Rational(250));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("formatting is lowest terms and round-trips") {
  CHECK(format_rational(Rational(2, 4)) == "1/2");
  CHECK(format_rational(Rational(-3)) == "-3");
  for (auto s : {"0", "1/3", "-22/7", "1099511627776/3"}) CHECK(format_rational(parse_rational(s)) == s);
}

TEST_CASE("floor, ceil and dyadic rounding") {
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(ceil(Rational(-1, 2)) == 0);
  CHECK(floor(Rational(7, 2)) == 3);
  CHECK(is_integer(Rational(4, 2)));
  Rational x(1, 3);
  CHECK(round_down(x, 10) <= x);
  CHECK(round_up(x, 10) >= x);
  CHECK(round_up(x, 10) - round_down(x, 10) == Rational(1, 1024));
}

TEST_CASE("exp(-x) enclosures contain the value and meet the tolerance") {
  Rational tol(1, 1000000000000LL);
  for (auto [p, d] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 1}, {3, 1}, {25, 2}, {1, 1000}}) {
    Rational x(p, d);
    Enclosure e = exp_neg_enclosure(x, tol);
    long double truth = std::exp(-static_cast<long double>(p) / d);
    CHECK(e.width() <= tol);
    CHECK(to_long_double(e.lo) <= truth + 1e-18L);
    CHECK(to_long_double(e.hi) >= truth - 1e-18L);
  }
  CHECK(exp_neg_enclosure(0, tol).contains(1));
}

TEST_CASE("tighter tolerance gives narrower enclosures") {
  Rational x(1, 2);
  Rational prev_width = 1;
  for (int k = 3; k <= 15; k += 3) {
    Rational tol = Rational(1) / boost::multiprecision::pow(Integer(10), k);
    Enclosure e = exp_neg_enclosure(x, tol);
    CHECK(e.width() <= tol);
    CHECK(e.width() <= prev_width);
    prev_width = e.width();
  }
}
