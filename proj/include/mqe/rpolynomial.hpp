#pragma once

#include <complex>
#include <map>

#include "mqe/rational.hpp"

namespace mqe {

/// Generalized polynomial sum_e a_e r^e in one variable with rational
/// exponents e >= 0. Canonical: no zero coefficients.
class RPolynomial {
 public:
  using TermMap = std::map<Rational, std::complex<double>>;

  RPolynomial() = default;
  explicit RPolynomial(TermMap terms);
  static RPolynomial constant(std::complex<double> c) { return RPolynomial(TermMap{{Rational(0), c}}); }
  static RPolynomial monomial(const Rational& e, std::complex<double> c) { return RPolynomial(TermMap{{e, c}}); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational max_exponent() const;

  void add_term(const Rational& exponent, std::complex<double> c);

  RPolynomial& operator+=(const RPolynomial& other);
  friend RPolynomial operator+(RPolynomial a, const RPolynomial& b) { return a += b; }
  friend RPolynomial operator*(const RPolynomial& a, const RPolynomial& b);
  RPolynomial scaled(std::complex<double> c) const;
  /// Multiplies by r^shift.
  RPolynomial shifted(const Rational& shift) const;

 private:
  TermMap terms_;
};

/// sum_e a_e r^e, for r >= 1.
std::complex<double> rpoly_eval(const RPolynomial& c, double r);

/// sum_e |a_e| r^e, an upper bound for |c(r)|.
double rpoly_abs_bound(const RPolynomial& c, double r);

}  // namespace mqe
