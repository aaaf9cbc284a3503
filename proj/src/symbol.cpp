#include "mqe/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mqe {

namespace {

constexpr int kMaxExponent = 1000;

}  // namespace

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw std::invalid_argument("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t axis) {
  std::vector<int> e(dim, 0);
  e.at(axis) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

bool MultiIndex::divides(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index dimension mismatch");
  for (std::size_t j = 0; j < size(); ++j)
    if (entries_[j] > other.entries_[j]) return false;
  return true;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_)
    for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index dimension mismatch");
  std::vector<int> e(size());
  for (std::size_t j = 0; j < size(); ++j) e[j] = entries_[j] + other.entries_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index dimension mismatch");
  std::vector<int> e(size());
  for (std::size_t j = 0; j < size(); ++j) e[j] = entries_[j] - other.entries_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::scaled(int m) const {
  std::vector<int> e(entries_);
  for (int& x : e) x *= m;
  return MultiIndex(std::move(e));
}

RationalVector MultiIndex::as_rational() const {
  RationalVector v;
  v.reserve(size());
  for (int e : entries_) v.emplace_back(e);
  return v;
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  const int oa = a.order(), ob = b.order();
  if (oa != ob) return oa < ob;
  return a.entries_ > b.entries_;
}

Rational dot(const MultiIndex& alpha, const RationalVector& q) {
  if (alpha.size() != q.size()) throw DimensionError("dot: dimension mismatch");
  Rational s = 0;
  for (std::size_t j = 0; j < q.size(); ++j)
    if (alpha[j] != 0) s += alpha[j] * q[j];
  return s;
}

std::string to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(alpha[j]);
  }
  return s + ")";
}

std::string to_string(const ExactComplex& c) {
  if (c.im == 0) return to_string(c.re);
  if (c.re == 0) return to_string(c.im) + "i";
  std::string s = to_string(c.re);
  s += c.im < 0 ? "-" : "+";
  s += to_string(Rational(abs(c.im))) + "i";
  return s;
}

// ------------------------------------------------------------ OperatorSymbol

OperatorSymbol::OperatorSymbol(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw DimensionError("symbol dimension must be at least 1");
}

OperatorSymbol::OperatorSymbol(std::size_t dim, TermMap terms) : OperatorSymbol(dim) {
  for (auto& [alpha, c] : terms) add_term(alpha, c);
}

ExactComplex OperatorSymbol::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? ExactComplex{} : it->second;
}

std::vector<MultiIndex> OperatorSymbol::support() const {
  std::vector<MultiIndex> s;
  s.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) s.push_back(alpha);
  return s;
}

int OperatorSymbol::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.order());
  return d;
}

void OperatorSymbol::add_term(const MultiIndex& alpha, const ExactComplex& c) {
  if (alpha.size() != dim_) throw DimensionError("term " + to_string(alpha) + " does not match dimension " +
                                                 std::to_string(dim_));
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OperatorSymbol OperatorSymbol::scaled(const ExactComplex& c) const {
  OperatorSymbol out(dim_);
  for (const auto& [alpha, a] : terms_) out.add_term(alpha, a * c);
  return out;
}

OperatorSymbol operator+(const OperatorSymbol& a, const OperatorSymbol& b) {
  if (a.dim_ != b.dim_) throw DimensionError("symbol dimension mismatch");
  OperatorSymbol out = a;
  for (const auto& [alpha, c] : b.terms_) out.add_term(alpha, c);
  return out;
}

OperatorSymbol operator-(const OperatorSymbol& a, const OperatorSymbol& b) {
  return a + b.scaled(ExactComplex{-1, 0});
}

OperatorSymbol operator*(const OperatorSymbol& a, const OperatorSymbol& b) {
  if (a.dim_ != b.dim_) throw DimensionError("symbol dimension mismatch");
  OperatorSymbol out(a.dim_);
  for (const auto& [alpha, ca] : a.terms_)
    for (const auto& [beta, cb] : b.terms_) out.add_term(alpha + beta, ca * cb);
  return out;
}

SymbolSystem::SymbolSystem(std::vector<OperatorSymbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("a symbol system needs at least one symbol");
  for (const auto& p : symbols_)
    if (p.dim() != symbols_.front().dim()) throw DimensionError("symbols in a system must share one dimension");
}

SymbolSystem SymbolSystem::scaled(const ExactComplex& c) const {
  std::vector<OperatorSymbol> out;
  for (const auto& p : symbols_) out.push_back(p.scaled(c));
  return SymbolSystem(std::move(out));
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message), line_(line), column_(column) {}

// -------------------------------------------------------------------- parser

namespace {

class SymbolParser {
 public:
  SymbolParser(std::string_view text, std::size_t dim, std::size_t line) : text_(text), dim_(dim), line_(line) {}

  OperatorSymbol parse() {
    OperatorSymbol result(dim_);
    skip_space();
    if (at_end()) fail("empty symbol");
    bool first = true;
    while (true) {
      skip_space();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [alpha, c] = parse_term();
      if (sign < 0) c = ExactComplex{-c.re, -c.im};
      result.add_term(alpha, c);
      skip_space();
      if (at_end()) break;
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    if (line_) os << "line " << line_ << ", ";
    os << "column " << pos_ + 1 << ": " << what;
    throw ParseError(os.str(), line_, pos_ + 1);
  }

  std::string read_digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
    return s;
  }

  // rational := digits ['/' digits | '.' digits]
  Rational parse_rational_literal() {
    std::size_t start = pos_;
    std::string s = read_digits();
    if (peek() == '/') {
      ++pos_;
      std::string d = read_digits();
      if (d.empty()) fail("expected denominator after '/'");
      if (Integer(d) == 0) {
        pos_ = start;
        fail("zero denominator");
      }
      return Rational(Integer(s), Integer(d));
    }
    if (peek() == '.') {
      ++pos_;
      std::string f = read_digits();
      if (f.empty()) fail("expected digits after '.'");
      s += "." + f;
    }
    return parse_rational(s);
  }

  std::pair<MultiIndex, ExactComplex> parse_term() {
    ExactComplex c{1, 0};
    bool have_literal = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Rational r = parse_rational_literal();
      if (peek() == 'i' && !next_is_xi()) {
        ++pos_;
        c = {0, r};
      } else {
        c = {r, 0};
      }
      have_literal = true;
    } else if (peek() == 'i' && !next_is_xi()) {
      ++pos_;
      c = {0, 1};
      have_literal = true;
    }
    std::vector<int> exps(dim_, 0);
    bool have_factor = false;
    skip_space();
    if (have_literal && peek() == '*') {
      ++pos_;
      skip_space();
      if (!next_is_xi()) fail("expected factor 'xi<k>' after '*'");
    }
    while (next_is_xi()) {
      parse_factor(exps);
      have_factor = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (!next_is_xi()) fail("expected factor 'xi<k>' after '*'");
      }
    }
    if (!have_literal && !have_factor) fail("expected a coefficient or a factor 'xi<k>'");
    return {MultiIndex(std::move(exps)), c};
  }

  bool next_is_xi() const { return text_.substr(pos_, 2) == "xi"; }

  void parse_factor(std::vector<int>& exps) {
    pos_ += 2;
    std::size_t index_pos = pos_;
    std::string idx = read_digits();
    if (idx.empty()) fail("expected variable index after 'xi'");
    if (idx.size() > 6 || std::stoul(idx) == 0) {
      pos_ = index_pos;
      fail("variable index out of range");
    }
    std::size_t k = std::stoul(idx);
    if (k > dim_) {
      pos_ = index_pos;
      throw DimensionError("column " + std::to_string(index_pos + 1) + ": variable xi" + idx +
                           " exceeds dimension " + std::to_string(dim_));
    }
    int e = 1;
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t exp_pos = pos_;
      std::string d = read_digits();
      if (d.empty()) fail("expected exponent after '^'");
      if (d.size() > 6 || std::stol(d) > kMaxExponent) {
        pos_ = exp_pos;
        fail("exponent overflow (limit " + std::to_string(kMaxExponent) + ")");
      }
      e = static_cast<int>(std::stol(d));
    }
    if (exps[k - 1] + e > kMaxExponent) fail("exponent overflow (limit " + std::to_string(kMaxExponent) + ")");
    exps[k - 1] += e;
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const MultiIndex& alpha) {
  std::string s;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "xi" + std::to_string(j + 1);
    if (alpha[j] > 1) s += "^" + std::to_string(alpha[j]);
  }
  return s;
}

// One signed piece: real or imaginary coefficient times monomial.
void append_piece(std::string& out, const Rational& value, bool imaginary, const MultiIndex& alpha) {
  const bool negative = value < 0;
  const Rational mag = negative ? Rational(-value) : value;
  if (out.empty()) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  std::string mono = monomial_text(alpha);
  std::string lit;
  if (imaginary)
    lit = mag == 1 ? "i" : to_string(mag) + "i";
  else if (mag != 1 || mono.empty())
    lit = to_string(mag);
  out += lit;
  if (!lit.empty() && !mono.empty()) out += "*";
  out += mono;
}

}  // namespace

OperatorSymbol parse_symbol(std::string_view text, std::size_t dim) {
  return SymbolParser(text, dim, 0).parse();
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t p = text.find("xi"); p != std::string_view::npos; p = text.find("xi", p + 2)) {
    std::size_t q = p + 2, k = 0;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q])) && q - p < 9)
      k = k * 10 + static_cast<std::size_t>(text[q++] - '0');
    best = std::max(best, k);
  }
  return best;
}

std::string to_string(const OperatorSymbol& symbol) {
  if (symbol.is_zero()) return "0";
  std::string out;
  for (const auto& [alpha, c] : symbol.terms()) {
    if (c.re != 0) append_piece(out, c.re, false, alpha);
    if (c.im != 0) append_piece(out, c.im, true, alpha);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const OperatorSymbol& symbol) { return os << to_string(symbol); }

SymbolSystem parse_system(std::string_view text, std::size_t dim_hint) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::size_t dim = dim_hint;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string body = line.substr(first + 1);
      auto colon = body.find(':');
      if (colon != std::string::npos) {
        std::string key = body.substr(0, colon);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        if (key == "dim") {
          try {
            dim = std::stoul(body.substr(colon + 1));
          } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed dim directive", line_no, first + 1);
          }
        }
      }
      continue;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.emplace_back(line_no, line);
  }
  if (lines.empty()) throw ParseError("system file contains no symbols", line_no, 1);
  if (dim == 0)
    for (const auto& [no, l] : lines) dim = std::max(dim, max_variable_index(l));
  if (dim == 0) dim = 1;
  std::vector<OperatorSymbol> symbols;
  for (const auto& [no, l] : lines) {
    try {
      symbols.push_back(SymbolParser(l, dim, no).parse());
    } catch (const DimensionError& e) {
      throw ParseError("line " + std::to_string(no) + ", " + e.what(), no, 1);
    }
  }
  return SymbolSystem(std::move(symbols));
}

SymbolSystem load_system(const std::string& path, std::size_t dim_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_system(buffer.str(), dim_hint);
}

// ---------------------------------------------------------------- evaluation

std::complex<double> evaluate(const OperatorSymbol& p, std::span<const double> xi) {
  auto [re, im] = evaluate_parts<double>(p, xi);
  return {re, im};
}

OperatorSymbol xi_derivative(const OperatorSymbol& p, const MultiIndex& alpha) {
  if (alpha.size() != p.dim()) throw DimensionError("xi_derivative: dimension mismatch");
  OperatorSymbol out(p.dim());
  for (const auto& [beta, c] : p.terms()) {
    if (!alpha.divides(beta)) continue;
    Integer falling = 1;
    for (std::size_t j = 0; j < beta.size(); ++j)
      for (int k = 0; k < alpha[j]; ++k) falling *= beta[j] - k;
    out.add_term(beta - alpha, c * ExactComplex{Rational(falling), 0});
  }
  return out;
}

OperatorSymbol restrict_to_coordinate_hyperplane(const OperatorSymbol& p, std::size_t axis) {
  OperatorSymbol out(p.dim());
  for (const auto& [alpha, c] : p.terms())
    if (alpha[axis] == 0) out.add_term(alpha, c);
  return out;
}

}  // namespace mqe
