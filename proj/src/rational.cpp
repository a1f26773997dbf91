#include "totime/rational.hpp"

#include <cctype>

#include "totime/error.hpp"

namespace totime {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

Integer pow10(long n) {
  Integer p = 1;
  for (long i = 0; i < n; ++i) p *= 10;
  return p;
}

Rational pow2(long n) {
  Rational p = 1;
  if (n >= 0) {
    p = Rational(Integer(1) << static_cast<unsigned>(n));
  } else {
    p = Rational(Integer(1), Integer(1) << static_cast<unsigned>(-n));
  }
  return p;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (exp_part.size() > 6) throw Error(ErrorCode::ParseError, "exponent too large in '" + std::string(text) + "'");
      exponent = static_cast<long>(parse_integer(exp_part, text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    Integer num = int_part.empty() ? Integer(0) : parse_integer(int_part, text);
    if (!frac_part.empty()) num = num * pow10(static_cast<long>(frac_part.size())) + parse_integer(frac_part, text);
    exponent -= static_cast<long>(frac_part.size());
    value = exponent >= 0 ? Rational(num * pow10(exponent)) : Rational(num, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer floor(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer quotient = num / den;  // truncates toward zero
  if (num < 0 && quotient * den != num) quotient -= 1;
  return quotient;
}

Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

Rational round_down(const Rational& q, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return Rational(floor(q * scale), scale);
}

Rational round_up(const Rational& q, unsigned bits) {
  Integer scale = Integer(1) << bits;
  return Rational(ceil(q * scale), scale);
}

long double to_long_double(const Rational& q) {
  return boost::multiprecision::numerator(q).convert_to<long double>() /
         boost::multiprecision::denominator(q).convert_to<long double>();
}

Enclosure exp_neg_enclosure(const Rational& x, const Rational& tol) {
  if (x < 0) throw Error(ErrorCode::BadParameters, "exp_neg_enclosure needs x >= 0");
  if (tol <= 0) throw Error(ErrorCode::BadParameters, "exp_neg_enclosure needs tol > 0");
  if (x == 0) return {1, 1};

  // Halve until the argument is at most 1/2, so the alternating series has
  // monotonically shrinking terms and consecutive partial sums bracket the value.
  unsigned halvings = 0;
  Rational y = x;
  while (y > Rational(1, 2)) {
    y /= 2;
    ++halvings;
  }

  unsigned bits = 16;
  while (Rational(1) / pow2(static_cast<long>(bits)) > tol) ++bits;
  bits += halvings + 8;

  for (;;) {
    Rational term = 1;
    Rational sum = 1;
    Rational eps = Rational(1) / pow2(static_cast<long>(bits) + 2);
    Rational lo;
    Rational hi;
    for (unsigned k = 1;; ++k) {
      term = -term * y / k;
      Rational next = sum + term;
      if (abs(term) <= eps) {
        lo = term < 0 ? next : sum;
        hi = term < 0 ? sum : next;
        break;
      }
      sum = next;
    }
    lo = round_down(lo, bits + 2);
    hi = round_up(hi, bits + 2);
    for (unsigned i = 0; i < halvings; ++i) {
      lo = round_down(lo * lo, bits + 2);
      hi = round_up(hi * hi, bits + 2);
    }
    if (lo < 0) lo = 0;
    if (hi - lo <= tol) return {lo, hi};
    bits += 8;
  }
}

}  // namespace totime
