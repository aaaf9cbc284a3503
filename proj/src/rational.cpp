#include "mqe/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mqe {

std::string to_string(const Rational& value) { return value.str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find('/') != std::string::npos) {
    try {
      return Rational(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  // decimal: sign, digits, optional fraction, optional exponent
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  Integer mantissa = 0;
  long scale = 0;
  bool digits = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, digits = true)
    mantissa = mantissa * 10 + (s[i] - '0');
  if (i < s.size() && s[i] == '.') {
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, digits = true) {
      mantissa = mantissa * 10 + (s[i] - '0');
      --scale;
    }
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    try {
      scale += std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0) throw std::invalid_argument("malformed exponent in '" + s + "'");
    i += used;
  }
  if (!digits || i != s.size()) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (std::labs(scale) > 4000) throw std::invalid_argument("exponent out of range in '" + s + "'");
  Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(scale)));
  Rational result = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  return negative ? Rational(-result) : result;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);
}

std::vector<std::string> to_strings(const RationalVector& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

std::vector<double> to_doubles(const RationalVector& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

namespace {

// Stern-Brocot descent on [lo, hi] with 0 <= lo <= hi.
Rational simplest_nonnegative(Rational lo, Rational hi) {
  Integer fl = numerator(lo) / denominator(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // lo and hi share integer part fl: recurse on reciprocals of fractional parts
  Rational inner = simplest_nonnegative(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / inner;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_nonnegative(-hi, -lo);
  return simplest_nonnegative(lo, hi);
}

}  // namespace mqe
