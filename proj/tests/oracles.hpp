#pragma once

// Test-only oracles. Nothing here calls into the code under test except to
// wrap corpus functions as Integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "corrquad/integrand.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

inline Rational exact(double v) { return Rational(v); }  // doubles are dyadic rationals

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// ∫_a^b Σ c_i x^i dx in exact arithmetic.
inline Rational poly_integral(const std::vector<Rational>& c, const Rational& a,
                              const Rational& b) {
  Rational sum = 0;
  Rational pa = a, pb = b;
  for (std::size_t i = 0; i < c.size(); ++i) {
    sum += c[i] * (pb - pa) / static_cast<int>(i + 1);
    pa *= a;
    pb *= b;
  }
  return sum;
}

inline Rational poly_eval(const std::vector<Rational>& c, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline std::vector<Rational> poly_derivative(const std::vector<Rational>& c) {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<int>(i));
  if (d.empty()) d.push_back(0);
  return d;
}

inline double poly_eval_double(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// Integrand for a double-coefficient polynomial, derivatives to order 6.
inline corrquad::Integrand poly_integrand(std::vector<double> coeffs) {
  auto deriv = [coeffs](int k, double x) {
    std::vector<double> c = coeffs;
    for (int d = 0; d < k; ++d) {
      std::vector<double> n;
      for (std::size_t i = 1; i < c.size(); ++i) n.push_back(c[i] * static_cast<double>(i));
      if (n.empty()) n.push_back(0.0);
      c = std::move(n);
    }
    return poly_eval_double(c, x);
  };
  return corrquad::Integrand([deriv](double x) { return deriv(0, x); }, deriv, 6);
}

/// Corpus member with hand-derived derivatives f^(0..6) in long double.
struct CorpusFunction {
  std::string name;
  std::string expr;  // same function in the expression language
  std::function<long double(int, long double)> derivative;
};

inline long double hermite(int n, long double x) {
  long double h0 = 1.0L, h1 = 2.0L * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    const long double h2 = 2.0L * x * h1 - 2.0L * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

inline std::vector<CorpusFunction> corpus() {
  return {
      {"exp", "exp(x)", [](int, long double x) { return expl(x); }},
      {"gauss", "exp(-x^2)",
       [](int k, long double x) {
         // d^k/dx^k e^{-x²} = (−1)^k H_k(x) e^{-x²}
         return ((k % 2) ? -1.0L : 1.0L) * hermite(k, x) * expl(-x * x);
       }},
      {"sin", "sin(x)",
       [](int k, long double x) {
         switch (k % 4) {
           case 0: return sinl(x);
           case 1: return cosl(x);
           case 2: return -sinl(x);
           default: return -cosl(x);
         }
       }},
      {"runge", "1/(1+x^2)",
       [](int k, long double x) {
         // 1/(1+x²) = Im 1/(x − i), so f^(k) = (−1)^k k! Im (x − i)^{−(k+1)}
         long double fact = 1.0L;
         for (int i = 2; i <= k; ++i) fact *= i;
         const std::complex<long double> z(x, -1.0L);
         const auto p = std::pow(z, -(k + 1));
         return ((k % 2) ? -1.0L : 1.0L) * fact * p.imag();
       }},
  };
}

inline corrquad::Integrand corpus_integrand(const CorpusFunction& cf) {
  auto d = cf.derivative;
  return corrquad::Integrand([d](double x) { return static_cast<double>(d(0, x)); },
                             [d](int k, double x) { return static_cast<double>(d(k, x)); },
                             6);
}

/// Centred k-th difference Σ (−1)^i C(k,i) f(x + (k/2 − i)h) / h^k in long
/// double, Richardson-extrapolated over h, h/2, h/4, h/8 (error series in h²).
inline long double richardson_derivative(const std::function<long double(long double)>& f,
                                         int k, long double x, long double h = 0.2L) {
  auto central = [&](long double step) {
    long double sum = 0.0L, binom = 1.0L;
    for (int i = 0; i <= k; ++i) {
      const long double offset = (0.5L * k - i) * step;
      sum += ((i % 2) ? -binom : binom) * f(x + offset);
      binom = binom * (k - i) / (i + 1);
    }
    return sum / powl(step, k);
  };
  constexpr int levels = 4;
  std::array<std::array<long double, levels>, levels> t{};
  for (int m = 0; m < levels; ++m) {
    t[m][0] = central(h / powl(2.0L, m));
    long double factor = 1.0L;
    for (int j = 1; j <= m; ++j) {
      factor *= 4.0L;
      t[m][j] = (factor * t[m][j - 1] - t[m - 1][j - 1]) / (factor - 1.0L);
    }
  }
  return t[levels - 1][levels - 1];
}

/// Random polynomial coefficients of the given degree, uniform in [−1, 1].
inline std::vector<double> random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(degree + 1));
  for (auto& v : c) v = u(rng);
  return c;
}

inline std::vector<Rational> to_rational(const std::vector<double>& c) {
  std::vector<Rational> r;
  for (double v : c) r.push_back(exact(v));
  return r;
}

/// Relative error scaled by the L1 size of the integrand (approximated by a
/// fine midpoint sum of |p|), so near-cancelling integrals are not penalised.
inline double l1_relative_error(double got, const Rational& want, const std::vector<double>& c,
                                double a, double b) {
  double l1 = 0.0;
  const int m = 2000;
  for (int i = 0; i < m; ++i) {
    const double x = a + (b - a) * (i + 0.5) / m;
    l1 += std::abs(poly_eval_double(c, x));
  }
  l1 *= (b - a) / m;
  const double w = to_double(want);
  return std::abs(got - w) / std::max(std::abs(w), l1);
}

/// ∫_0^1 |g| by Gauss–Kronrod between the sign changes of g, located by a
/// dense scan and bisection (plus a forced cut at ½ for piecewise g).
inline double abs_integral_unit(const std::function<double(double)>& g) {
  std::vector<double> cuts{0.0, 0.5, 1.0};
  const int m = 4000;
  for (int i = 1; i <= m; ++i) {
    double lo = (i - 1.0) / m, hi = static_cast<double>(i) / m;
    if (g(lo) * g(hi) >= 0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(lo) * g(mid) <= 0 ? hi : lo) = mid;
    }
    cuts.push_back(0.5 * (lo + hi));
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] <= cuts[i - 1]) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double x) { return std::abs(g(x)); }, cuts[i - 1], cuts[i], 15, 1e-14);
  }
  return total;
}

/// max_[0,1] |g|: best of a dense sample, then Brent-polished around it.
inline double max_abs_unit(const std::function<double(double)>& g) {
  const int m = 20000;
  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double v = std::abs(g(static_cast<double>(i) / m));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1.0) / m), hi = std::min(1.0, (best + 1.0) / m);
  const auto polished = boost::math::tools::brent_find_minima(
      [&](double x) { return -std::abs(g(x)); }, lo, hi, 40);
  return std::max(best_val, -polished.second);
}

}  // namespace oracle
