#include "mqe/rpolynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace mqe {

RPolynomial::RPolynomial(TermMap terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

Rational RPolynomial::max_exponent() const { return terms_.empty() ? Rational(0) : terms_.rbegin()->first; }

void RPolynomial::add_term(const Rational& exponent, std::complex<double> c) {
  if (exponent < 0) throw std::invalid_argument("RPolynomial exponents must be non-negative");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

RPolynomial& RPolynomial::operator+=(const RPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

RPolynomial operator*(const RPolynomial& a, const RPolynomial& b) {
  RPolynomial out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

RPolynomial RPolynomial::scaled(std::complex<double> c) const {
  RPolynomial out;
  for (const auto& [e, a] : terms_) out.add_term(e, a * c);
  return out;
}

RPolynomial RPolynomial::shifted(const Rational& shift) const {
  RPolynomial out;
  for (const auto& [e, a] : terms_) out.add_term(e + shift, a);
  return out;
}

std::complex<double> rpoly_eval(const RPolynomial& c, double r) {
  std::complex<double> sum = 0.0;
  for (const auto& [e, a] : c.terms()) sum += a * std::pow(r, to_double(e));
  return sum;
}

double rpoly_abs_bound(const RPolynomial& c, double r) {
  double sum = 0.0;
  for (const auto& [e, a] : c.terms()) sum += std::abs(a) * std::pow(r, to_double(e));
  return sum;
}

}  // namespace mqe
