#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "mqe/rational.hpp"

namespace mqe {

/// Exponent vector alpha in N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries) : MultiIndex(std::vector<int>(entries)) {}

  static MultiIndex zero(std::size_t dim) { return MultiIndex(std::vector<int>(dim, 0)); }
  static MultiIndex unit(std::size_t dim, std::size_t axis);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// |alpha|
  int order() const;
  bool is_zero() const { return order() == 0; }
  /// Componentwise alpha <= other.
  bool divides(const MultiIndex& other) const;
  /// alpha! as a double.
  double factorial() const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex scaled(int m) const;

  RationalVector as_rational() const;

  /// Graded lexicographic order: total degree first.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

 private:
  std::vector<int> entries_;
};

Rational dot(const MultiIndex& alpha, const RationalVector& q);
std::string to_string(const MultiIndex& alpha);

/// Complex number with exact rational parts.
struct ExactComplex {
  Rational re = 0;
  Rational im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) = default;
};

std::string to_string(const ExactComplex& c);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symbol sum a_alpha xi^alpha with constant (frozen) coefficients. Canonical:
/// no stored coefficient is exactly zero.
class OperatorSymbol {
 public:
  using TermMap = std::map<MultiIndex, ExactComplex>;

  explicit OperatorSymbol(std::size_t dim);
  OperatorSymbol(std::size_t dim, TermMap terms);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExactComplex coefficient(const MultiIndex& alpha) const;
  std::vector<MultiIndex> support() const;
  int degree() const;

  /// Adds c * xi^alpha, dropping the term if the sum cancels.
  void add_term(const MultiIndex& alpha, const ExactComplex& c);

  OperatorSymbol scaled(const ExactComplex& c) const;
  friend OperatorSymbol operator+(const OperatorSymbol& a, const OperatorSymbol& b);
  friend OperatorSymbol operator-(const OperatorSymbol& a, const OperatorSymbol& b);
  friend OperatorSymbol operator*(const OperatorSymbol& a, const OperatorSymbol& b);
  friend bool operator==(const OperatorSymbol& a, const OperatorSymbol& b) = default;

 private:
  std::size_t dim_;
  TermMap terms_;
};

/// Ordered list of N >= 1 symbols sharing one dimension.
class SymbolSystem {
 public:
  explicit SymbolSystem(std::vector<OperatorSymbol> symbols);

  std::size_t dim() const { return symbols_.front().dim(); }
  std::size_t size() const { return symbols_.size(); }
  const OperatorSymbol& operator[](std::size_t j) const { return symbols_[j]; }
  const std::vector<OperatorSymbol>& symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  SymbolSystem scaled(const ExactComplex& c) const;

 private:
  std::vector<OperatorSymbol> symbols_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar: terms joined by '+'/'-'; term := [literal '*'] factor*, factor :=
/// "xi" INDEX ['^' NAT], literal := rational | rational 'i' | 'i'.
/// Columns in errors are 1-based; line is 0 for single-symbol parses.
OperatorSymbol parse_symbol(std::string_view text, std::size_t dim);

/// Largest xi index used in text (0 when none); used to infer dimensions.
std::size_t max_variable_index(std::string_view text);

/// Printer whose output parse_symbol reads back to the same symbol.
std::string to_string(const OperatorSymbol& symbol);
std::ostream& operator<<(std::ostream& os, const OperatorSymbol& symbol);

/// System file: one symbol per line, '#' comment lines, blank lines skipped.
/// A comment of the form "# dim: N" fixes the dimension; otherwise it is
/// dim_hint when nonzero, else the largest index used.
SymbolSystem parse_system(std::string_view text, std::size_t dim_hint = 0);
SymbolSystem load_system(const std::string& path, std::size_t dim_hint = 0);

/// xi^alpha for a real or interval-like scalar.
template <class T>
T monomial(const MultiIndex& alpha, std::span<const T> xi) {
  T value(1.0);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (int e = 0; e < alpha[j]; ++e) value = value * xi[j];
  return value;
}

/// Real and imaginary parts of P(xi) evaluated in scalar type T.
template <class T>
std::pair<T, T> evaluate_parts(const OperatorSymbol& p, std::span<const T> xi) {
  if (xi.size() != p.dim()) throw DimensionError("evaluate: xi has wrong dimension");
  T re(0.0), im(0.0);
  for (const auto& [alpha, c] : p.terms()) {
    T m = monomial<T>(alpha, xi);
    if (c.re != 0) re = re + T(to_double(c.re)) * m;
    if (c.im != 0) im = im + T(to_double(c.im)) * m;
  }
  return {re, im};
}

std::complex<double> evaluate(const OperatorSymbol& p, std::span<const double> xi);

template <class Derived>
std::complex<double> evaluate(const OperatorSymbol& p, const Eigen::MatrixBase<Derived>& xi) {
  Eigen::VectorXd v = xi;
  return evaluate(p, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

/// Partial derivative d^alpha_xi P with falling-factorial coefficients.
OperatorSymbol xi_derivative(const OperatorSymbol& p, const MultiIndex& alpha);

/// Symbol restricted to the hyperplane xi_axis = 0.
OperatorSymbol restrict_to_coordinate_hyperplane(const OperatorSymbol& p, std::size_t axis);

}  // namespace mqe
