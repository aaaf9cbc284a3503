#include "mqe/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <sstream>

#include "mqe/ellipticity.hpp"
#include "mqe/gevrey_bounds.hpp"
#include "mqe/oracles.hpp"
#include "mqe/quadrature.hpp"
#include "mqe/wavepacket.hpp"

namespace mqe {

namespace {

using cd = std::complex<double>;

class Suite {
 public:
  explicit Suite(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    r_.passed = false;
    if (r_.detail.empty()) r_.detail = what();
  }
  void fail(const std::string& what) {
    check(false, [&] { return what; });
  }

  SuiteResult done() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  SuiteResult r_;
  std::chrono::steady_clock::time_point start_;
};

template <class F>
SuiteResult guarded(const std::string& name, F body) {
  Suite s(name);
  try {
    body(s);
  } catch (const std::exception& e) {
    s.fail(std::string("exception: ") + e.what());
  }
  return s.done();
}

std::vector<MultiIndex> random_support(std::mt19937_64& rng, std::size_t dim, std::size_t max_points, int max_exp) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<MultiIndex> pts;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> v(dim);
    for (auto& x : v) x = e(rng);
    pts.emplace_back(v);
  }
  return pts;
}

// Random support with a pure power on every axis, so the polyhedron is
// usually regular.
NewtonPolyhedron random_regular(std::mt19937_64& rng, std::size_t dim, int max_exp) {
  for (;;) {
    auto support = random_support(rng, dim, 5, max_exp);
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<int> e(dim, 0);
      e[j] = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_exp));
      support.emplace_back(e);
    }
    auto F = build_polyhedron(dim, support);
    if (F.regular) return F;
  }
}

OperatorSymbol random_symbol(std::mt19937_64& rng, std::size_t dim, int max_degree) {
  std::uniform_int_distribution<int> nterms(1, 6), coeff(-9, 9), den(1, 5), kind(0, 2);
  OperatorSymbol p(dim);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    const int budget = std::uniform_int_distribution<int>(0, max_degree)(rng);
    for (int b = 0; b < budget; ++b) ++e[std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng)];
    ExactComplex c;
    const int k = kind(rng);
    if (k != 1) c.re = Rational(coeff(rng), den(rng));
    if (k != 0) c.im = Rational(coeff(rng), den(rng));
    p.add_term(MultiIndex(e), c);
  }
  return p;
}

std::string str(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

long hadamard_bound(std::size_t n, int max_exp) {
  return static_cast<long>(std::floor(std::pow(std::sqrt(static_cast<double>(n)) * max_exp, static_cast<double>(n)))) + 1;
}

// Central difference of order k along every axis, tensorized.
cd fd_derivative(const std::function<cd(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x, const MultiIndex& alpha,
                 double h) {
  const std::size_t n = alpha.size();
  std::vector<int> idx(n, 0);
  cd total = 0.0;
  for (;;) {
    Eigen::VectorXd y = x;
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const int k = alpha[j], i = idx[j];
      y[static_cast<Eigen::Index>(j)] += (0.5 * k - i) * h;
      w *= ((i % 2) ? -1.0 : 1.0) * std::tgamma(k + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(k - i + 1.0));
      w /= std::pow(h, k);
    }
    total += w * f(y);
    std::size_t j = 0;
    while (j < n && ++idx[j] > alpha[j]) idx[j++] = 0;
    if (j == n) break;
  }
  return total;
}

}  // namespace

SuiteResult suite_examples(const std::string& data_dir) {
  return guarded("examples", [&](Suite& s) {
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(data_dir))
      if (e.path().extension() == ".sys") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    s.check(!files.empty(), [&] { return "no .sys files in " + data_dir; });
    for (const auto& f : files) {
      try {
        auto sys = load_system(f.string());
        auto F = build_polyhedron(sys);
        s.check(true, [] { return ""; });
        (void)F;
      } catch (const ParseError& e) {
        s.fail(f.filename().string() + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " +
               e.what());
      } catch (const std::exception& e) {
        s.fail(f.filename().string() + ": " + e.what());
      }
    }
  });
}

SuiteResult suite_hull_oracle(std::uint64_t seed, int systems) {
  return guarded("hull oracle", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < systems; ++t) {
      const std::size_t dim = 2 + static_cast<std::size_t>(t % 2);
      auto support = random_support(rng, dim, 8, 10);
      auto F = build_polyhedron(dim, support);
      auto pts = support;
      pts.push_back(MultiIndex::zero(dim));
      s.check(F.vertices == oracle::extreme_points(pts), [&] { return "vertex mismatch on system " + std::to_string(t); });
      if (F.affine_dim != dim) continue;
      auto ref = oracle::facets(pts);
      std::vector<oracle::Plane> got;
      for (const auto& h : F.hull_facets) got.push_back({h.normal, h.offset});
      std::sort(got.begin(), got.end());
      s.check(got == ref, [&] { return "facet mismatch on system " + std::to_string(t); });
    }
  });
}

SuiteResult suite_gauge_oracle(std::uint64_t seed, int polyhedra, int alphas) {
  return guarded("k_of oracle", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 12), den(1, 5);
    for (int p = 0; p < polyhedra; ++p) {
      const std::size_t dim = 2 + static_cast<std::size_t>(p % 2);
      auto F = random_regular(rng, dim, 8);
      for (int a = 0; a < alphas; ++a) {
        const int d = den(rng);
        RationalVector alpha(dim);
        for (auto& x : alpha) x = Rational(num(rng), d);
        const long D = d * hadamard_bound(dim, 8);
        const Rational ref = oracle::gauge_by_bisection(F.vertices, alpha, D);
        const Rational got = k_of(F, alpha);
        s.check(got == ref, [&] { return "k_of" + str(alpha) + " = " + to_string(got) + ", bisection " + to_string(ref); });
      }
    }
  });
}

SuiteResult suite_gauge_laws(std::uint64_t seed) {
  return guarded("k_of scaling and monotonicity", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(0, 12), den(1, 5);
    for (int p = 0; p < 20; ++p) {
      const std::size_t dim = 2 + static_cast<std::size_t>(p % 2);
      auto F = random_regular(rng, dim, 8);
      for (int t = 0; t < 20; ++t) {
        RationalVector a(dim), b(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          a[j] = Rational(num(rng), den(rng));
          b[j] = a[j] + Rational(num(rng), den(rng));
        }
        const Rational lambda(num(rng) + 1, den(rng));
        RationalVector la = a;
        for (auto& x : la) x *= lambda;
        s.check(k_of(F, la) == lambda * k_of(F, a), [&] { return "scaling fails at " + str(a); });
        s.check(k_of(F, a) <= k_of(F, b), [&] { return "monotonicity fails at " + str(a) + " <= " + str(b); });
      }
    }
  });
}

SuiteResult suite_quasi_homogeneity(std::uint64_t seed) {
  return guarded("quasi-homogeneity", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    int done = 0;
    for (int t = 0; t < 400 && done < 30; ++t) {
      const std::size_t dim = 2 + static_cast<std::size_t>(t % 2);
      auto P = random_symbol(rng, dim, 6);
      for (std::size_t j = 0; j < dim; ++j) P.add_term(MultiIndex::unit(dim, j).scaled(1 + static_cast<int>(rng() % 6)), {1, 0});
      auto F = build_polyhedron(SymbolSystem({P}));
      if (!F.regular) continue;
      ++done;
      for (const auto& q : F.facet_normals) {
        const auto part = qh_part(P, q).part;
        const auto qd = to_doubles(q);
        for (int i = 0; i < 10; ++i) {
          Eigen::VectorXd xi(static_cast<Eigen::Index>(dim));
          for (auto& x : xi) x = u(rng);
          const cd base = evaluate(part, xi);
          for (double r : {2.0, 10.0, 100.0}) {
            Eigen::VectorXd sc = xi;
            for (std::size_t j = 0; j < dim; ++j) sc[static_cast<Eigen::Index>(j)] *= std::pow(r, qd[j]);
            const cd got = evaluate(part, sc);
            double mass = 0.0;
            for (const auto& [a, c] : part.terms()) mass += std::abs(c.to_complex()) * std::abs(monomial<double>(a, std::span<const double>(xi.data(), dim)));
            s.check(std::abs(got - r * base) <= 1e-11 * r * (1 + mass),
                    [&] { return "P_q(r^q xi) != r P_q(xi) for " + to_string(P) + ", q = " + str(q); });
          }
        }
      }
    }
    s.check(done >= 10, [] { return "too few regular samples"; });
  });
}

SuiteResult suite_parser_round_trip(std::uint64_t seed) {
  return guarded("parser round trip", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 500; ++t) {
      const std::size_t dim = 1 + static_cast<std::size_t>(t % 4);
      auto p = random_symbol(rng, dim, 8);
      const std::string text = to_string(p);
      bool same = false;
      try {
        same = parse_symbol(text, dim) == p;
      } catch (const std::exception&) {
      }
      s.check(same, [&] { return "round trip fails for '" + text + "'"; });
    }
  });
}

SuiteResult suite_gamma_identities(std::uint64_t seed) {
  return guarded("gamma identities", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(1e-3, 20.0);
    std::uniform_int_distribution<int> up(1, 30);
    for (int i = 0; i < 1000; ++i) {
      const double a = ua(rng);
      const int p = up(rng);
      const double ref = std::tgamma(a + p), got = gamma_shift(a, p);
      s.check(std::abs(got - ref) <= 1e-12 * ref, [&] {
        std::ostringstream os;
        os.precision(17);
        os << "gamma_shift(" << a << ", " << p << ") = " << got << ", Gamma(a+p) = " << ref;
        return os.str();
      });
    }
  });
}

SuiteResult suite_convexity(std::uint64_t seed, int points) {
  return guarded("convexity inequality", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < points; ++i) {
      const double omega = 0.01 + 1.5 * u01(rng);
      const double a = omega + 20 * u01(rng), b = omega + 20 * u01(rng), c = omega + 20 * u01(rng);
      const double sigma = 1 + 5 * u01(rng);
      const double lambda = std::exp(30 * u01(rng) - 15), tau = std::exp(30 * u01(rng) - 15);
      s.check(check_convexity_inequality(lambda, tau, a, b, c, sigma, omega), [&] {
        std::ostringstream os;
        os.precision(17);
        os << "fails at lambda=" << lambda << " tau=" << tau << " a=" << a << " b=" << b << " c=" << c
           << " sigma=" << sigma << " omega=" << omega;
        return os.str();
      });
    }
  });
}

SuiteResult suite_quadrature_gamma() {
  return guarded("quadrature vs Gamma", [&](Suite& s) {
    auto sys = SymbolSystem({parse_symbol("xi1^2 - xi2^2", 2)});
    auto F = build_polyhedron(sys);
    Eigen::VectorXd xi0(2);
    xi0 << 1, 1;
    auto spec = make_wavepacket_spec(F, sys, F.facet_normals.front(), xi0, Rational(2), Rational(1));
    const auto q = to_doubles(spec.q);
    const double eta = to_double(spec.eta);
    for (int b1 = 0; b1 <= 20; ++b1)
      for (int b2 = 0; b1 + b2 <= 20; ++b2) {
        const MultiIndex beta{b1, b2};
        const auto d = derivative_at_center(spec, beta);
        const double ref = log_moment_closed_form(b1 * q[0] + b2 * q[1], eta) +
                           b1 * std::log(std::abs(spec.xi0[0])) + b2 * std::log(std::abs(spec.xi0[1]));
        s.check(std::abs(std::expm1(d.log_abs - ref)) < 1e-8, [&] { return "mismatch at beta = " + to_string(beta); });
      }
  });
}

SuiteResult suite_recursion_fd(std::uint64_t seed) {
  return guarded("recursion vs finite differences", [&](Suite& s) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (const char* text : {"i*xi1 + xi2^2", "xi1^2 - xi2^2", "xi1^2 + 2*xi1*xi2 - 1/3i*xi2 + xi2^2 + 2"}) {
      auto sys = SymbolSystem({parse_symbol(text, 2)});
      auto F = build_polyhedron(sys);
      Eigen::VectorXd xi0(2);
      xi0 << 0.6, -0.8;
      auto spec = make_wavepacket_spec(F, sys, F.facet_normals.front(), xi0, Rational(2), Rational(1), 0.5);
      auto bump = make_bump(2, 0.5, 4);
      auto a1 = iterate_coefficients(spec, sys, {0});
      const double eps = to_double(spec.epsilon);
      const auto q = to_doubles(spec.q);
      for (double r : {1.0, 2.5}) {
        auto phase = [&](const Eigen::VectorXd& y) {
          double p = 0.0;
          for (int j = 0; j < 2; ++j) p += (y[j] - spec.x0[j]) * std::pow(r, q[j]) * spec.xi0[j];
          return p;
        };
        auto Phi = [&](const Eigen::VectorXd& y) {
          std::vector<double> z(2);
          for (int j = 0; j < 2; ++j) z[j] = std::pow(r, eps * q[j]) * (y[j] - spec.x0[j]);
          return bump.value(z) * std::exp(cd(0, phase(y)));
        };
        auto apply = [&](const Eigen::VectorXd& x, double h) {
          cd total = 0.0;
          for (const auto& [alpha, c] : sys[0].terms())
            total += c.to_complex() * std::pow(cd(0, -1), alpha.order()) * fd_derivative(Phi, x, alpha, h);
          return total * std::exp(cd(0, -phase(x)));
        };
        for (int i = 0; i < 30; ++i) {
          Eigen::VectorXd x(2);
          x << u(rng), u(rng);
          const cd rec = evaluate_coefficients(a1, spec, bump, x, r);
          const cd fd = (4.0 * apply(x, 1e-3) - apply(x, 2e-3)) / 3.0;
          s.check(std::abs(rec - fd) <= 1e-4 * std::max(1.0, std::abs(fd)),
                  [&] { return std::string("level-1 mismatch for ") + text; });
        }
      }
    }
  });
}

std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opts) {
  std::vector<SuiteResult> out;
  if (!opts.data_dir.empty()) out.push_back(suite_examples(opts.data_dir));
  out.push_back(suite_hull_oracle(opts.seed));
  out.push_back(suite_gauge_oracle(opts.seed + 1));
  out.push_back(suite_gauge_laws(opts.seed + 2));
  out.push_back(suite_quasi_homogeneity(opts.seed + 3));
  out.push_back(suite_parser_round_trip(opts.seed + 4));
  out.push_back(suite_gamma_identities(opts.seed + 5));
  out.push_back(suite_convexity(opts.seed + 6));
  out.push_back(suite_quadrature_gamma());
  out.push_back(suite_recursion_fd(opts.seed + 7));
  return out;
}

}  // namespace mqe
