#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "corrquad/peano_kernels.hpp"
#include "corrquad/quadrature.hpp"
#include "oracles.hpp"

namespace {

using namespace corrquad;
using oracle::Rational;

std::vector<Rational> rationals(const std::array<Ratio, 7>& row) {
  std::vector<Rational> out;
  for (const auto& r : row) out.emplace_back(Rational(r.num, r.den));
  return out;
}

std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Rational> pad(std::vector<Rational> v) {
  v.resize(7, 0);
  return v;
}

// Factored kernel polynomials, expanded here in exact arithmetic.
std::vector<Rational> factored_left(int k) {
  const Rational one = 1;
  auto lin = [](Rational root) { return std::vector<Rational>{-root, 1}; };
  switch (k) {
    case 2: return pad({Rational(1, 60), Rational(-7, 30), Rational(1, 2)});
    case 3: {
      auto p = multiply(multiply(lin(0), lin(Rational(1, 5))), lin(Rational(1, 2)));
      for (auto& c : p) c /= 6;
      return pad(p);
    }
    case 4: {
      auto p = multiply(multiply(multiply(lin(0), lin(0)), lin(Rational(1, 3))), lin(Rational(3, 5)));
      for (auto& c : p) c /= 24;
      return pad(p);
    }
    case 5: {
      auto p = multiply(multiply(multiply(multiply(lin(0), lin(0)), lin(0)), lin(Rational(1, 2))),
                        lin(Rational(2, 3)));
      for (auto& c : p) c /= 120;
      return pad(p);
    }
    default: {
      auto x4 = multiply(multiply(lin(0), lin(0)), multiply(lin(0), lin(0)));
      auto p = multiply(x4, {Rational(1, 2), Rational(-7, 5), one});
      for (auto& c : p) c /= 720;
      return pad(p);
    }
  }
}

std::vector<Rational> factored_right(int k) {
  auto lin = [](Rational root) { return std::vector<Rational>{-root, 1}; };
  switch (k) {
    case 2: return pad({Rational(17, 60), Rational(-23, 30), Rational(1, 2)});
    case 3: {
      auto p = multiply(multiply(lin(1), lin(Rational(1, 2))), lin(Rational(4, 5)));
      for (auto& c : p) c /= 6;
      return pad(p);
    }
    case 4: {
      auto p = multiply(multiply(multiply(lin(1), lin(1)), lin(Rational(2, 3))), lin(Rational(2, 5)));
      for (auto& c : p) c /= 24;
      return pad(p);
    }
    case 5: {
      auto p = multiply(multiply(multiply(multiply(lin(1), lin(1)), lin(1)), lin(Rational(1, 2))),
                        lin(Rational(1, 3)));
      for (auto& c : p) c /= 120;
      return pad(p);
    }
    default: {
      auto q4 = multiply(multiply(lin(1), lin(1)), multiply(lin(1), lin(1)));
      auto p = multiply(q4, {Rational(1, 10), Rational(-3, 5), Rational(1)});
      for (auto& c : p) c /= 720;
      return pad(p);
    }
  }
}

// Peano kernel computed from its definition, independent of the table:
// K_k(t) = R[(x − t)_+^{k−1}/(k−1)!] for the unit-interval rule.
Rational definitional_kernel(int k, const Rational& t) {
  auto fact = [](int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  auto powr = [](Rational b, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  auto trunc = [&](const Rational& x, int d) -> Rational {  // d-th derivative
    const int n = k - 1 - d;
    if (x <= t) return 0;
    return powr(x - t, n) / fact(n);
  };
  const Rational integral = powr(1 - t, k) / fact(k);
  const Rational rule = (7 * trunc(0, 0) + 16 * trunc(Rational(1, 2), 0) + 7 * trunc(1, 0)) / 30 -
                        (trunc(1, 1) - trunc(0, 1)) / 60;
  return integral - rule;
}

Rational eval_rational(const std::vector<Rational>& c, const Rational& x) {
  return oracle::poly_eval(c, x);
}

TEST(PeanoKernel, StoredCoefficientsMatchFactoredForms) {
  for (int k = 2; k <= 6; ++k) {
    EXPECT_EQ(rationals(left_ratios(k)), factored_left(k)) << "P_" << k;
    EXPECT_EQ(rationals(right_ratios(k)), factored_right(k)) << "Q_" << k;
  }
}

TEST(PeanoKernel, TableMatchesDefinitionalKernel) {
  for (int k = 2; k <= 6; ++k) {
    const Rational sign = (k % 2 == 0) ? 1 : -1;
    // Interior points only: at t = 0 and t = 1 the truncated power's step
    // makes the pointwise value convention-dependent.
    for (int i = 1; i < 20; ++i) {
      const Rational t(i, 20);
      const auto& poly = (t < Rational(1, 2)) ? factored_left(k) : factored_right(k);
      EXPECT_EQ(sign * eval_rational(poly, t), definitional_kernel(k, t)) << k << " " << i;
    }
  }
}

TEST(KernelEval, Examples) {
  EXPECT_DOUBLE_EQ(kernel_eval(2, 0.0), 1.0 / 60.0);
  EXPECT_NEAR(kernel_eval(3, 0.2), 0.0, 1e-18);
  // Horner on the expanded Q_6 loses a few digits to cancellation.
  EXPECT_NEAR(kernel_eval(6, 0.5), 1.0 / 230400.0, 1e-12 / 230400.0);
}

TEST(KernelEval, DomainAndOrderErrors) {
  EXPECT_THROW(kernel_eval(2, -0.01), DomainError);
  EXPECT_THROW(kernel_eval(2, 1.01), DomainError);
  EXPECT_THROW(kernel_eval(7, 0.5), InvalidArgument);
  EXPECT_THROW(kernel_eval(1, 0.5), InvalidArgument);
}

TEST(KernelEval, MirrorAndSignSymmetry) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 2; k <= 6; ++k) {
    const PeanoKernel kern = peano_kernel(k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      if (k >= 3) {
        EXPECT_NEAR(kern.right(x), sign * kern.left(1.0 - x), 1e-14);
      }
      EXPECT_NEAR(kernel_eval(k, x), sign * kernel_eval(k, 1.0 - x), 1e-14);
    }
    // Continuity at the split, where the Q branch supplies the value.
    EXPECT_NEAR(kern.left(0.5), kern.right(0.5), 1e-16);
  }
}

TEST(KernelEvalScaled, Examples) {
  const Interval iv(0, 2);
  EXPECT_DOUBLE_EQ(kernel_eval_scaled(2, 0.0, iv), 1.0 / 15.0);
  const Interval w(-1.0, 4.0);
  // T_4 vanishes at x = 1/3 (P_4 branch) and x = 2/3 (Q_4 branch).
  EXPECT_NEAR(kernel_eval_scaled(4, -1.0 + 5.0 / 3.0, w), 0.0, 1e-14);
  EXPECT_NEAR(kernel_eval_scaled(4, -1.0 + 10.0 / 3.0, w), 0.0, 1e-14);
  for (int k = 2; k <= 6; ++k)
    for (double x : {0.0, 0.13, 0.5, 0.77, 1.0})
      EXPECT_EQ(kernel_eval_scaled(k, x, Interval(0, 1)), kernel_eval(k, x));
  EXPECT_THROW(kernel_eval_scaled(2, 2.5, iv), DomainError);
}

TEST(KernelConstants, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(kernel_abs_integral(4), 1.0 / 14580.0);
  EXPECT_DOUBLE_EQ(kernel_abs_integral(6), 1.0 / 604800.0);
  EXPECT_NEAR(kernel_abs_integral(2), 8.17966e-3, 1e-8);
  EXPECT_DOUBLE_EQ(kernel_abs_integral(2), 19.0 * std::sqrt(19.0) / 10125.0);
  EXPECT_DOUBLE_EQ(kernel_max_abs(2), 1.0 / 40.0);
  EXPECT_DOUBLE_EQ(kernel_max_abs(4), 1.0 / 5760.0);
  EXPECT_NEAR(kernel_max_abs(3), 1.3681e-3, 1e-7);
  EXPECT_THROW(kernel_max_abs(6), InvalidArgument);
}

TEST(KernelConstants, AbsIntegralMatchesAdaptiveQuadrature) {
  for (int k = 2; k <= 6; ++k) {
    const PeanoKernel kern = peano_kernel(k);
    const double total = oracle::abs_integral_unit([&](double x) { return kern(x); });
    EXPECT_NEAR(total / kernel_abs_integral(k), 1.0, 1e-9) << "k = " << k;
  }
}

TEST(KernelConstants, MaxAbsMatchesSampledAndPolished) {
  for (int k = 2; k <= 5; ++k) {
    const PeanoKernel kern = peano_kernel(k);
    const double found = oracle::max_abs_unit([&](double x) { return kern(x); });
    EXPECT_NEAR(found / kernel_max_abs(k), 1.0, 1e-8) << "k = " << k;
  }
}

TEST(KernelConstants, ScaledIdentitiesHoldExactly) {
  for (int k = 2; k <= 6; ++k) {
    const KernelConstants kc = scaled_constants(k);
    const long long scale = 1LL << (k + 1);
    auto check = [&](const ClosedForm& base, const ClosedForm& scaled) {
      EXPECT_EQ(Rational(scaled.rational.num, scaled.rational.den),
                scale * Rational(base.rational.num, base.rational.den));
      EXPECT_EQ(Rational(scaled.sqrt19.num, scaled.sqrt19.den),
                scale * Rational(base.sqrt19.num, base.sqrt19.den));
    };
    check(kc.C_form, kc.D_form);
    EXPECT_EQ(kc.D() / kc.C(), static_cast<double>(scale));
    if (k <= 5) {
      ASSERT_TRUE(kc.B_form && kc.E_form);
      check(*kc.B_form, *kc.E_form);
      EXPECT_EQ(*kc.E() / *kc.B(), static_cast<double>(scale));
    } else {
      EXPECT_FALSE(kc.B().has_value());
      EXPECT_FALSE(kc.E().has_value());
    }
  }
  EXPECT_DOUBLE_EQ(scaled_constants(4).D(), 8.0 / 3645.0);
  EXPECT_DOUBLE_EQ(scaled_constants(6).D(), 1.0 / 4725.0);
  EXPECT_DOUBLE_EQ(*scaled_constants(2).E(), 0.2);
}

TEST(KernelMoment, NullityAndOrthogonality) {
  for (int k = 2; k <= 5; ++k) EXPECT_LE(std::abs(kernel_moment(k, 0)), 1e-15) << k;
  for (int k = 2; k <= 4; ++k)
    for (int j = 1; j <= 5 - k; ++j) EXPECT_LE(std::abs(kernel_moment(k, j)), 1e-15) << k << j;
  // First non-vanishing moments, from exact integration of the table.
  EXPECT_NEAR(kernel_moment(2, 4), 1.0 / 25200.0, 1e-16);
  EXPECT_NEAR(kernel_moment(3, 3), 1.0 / 100800.0, 1e-16);
  EXPECT_NEAR(kernel_moment(4, 2), 1.0 / 302400.0, 1e-16);
  EXPECT_NEAR(kernel_moment(5, 1), 1.0 / 604800.0, 1e-16);
}

TEST(KernelMoment, SixthKernelIsOneSigned) {
  EXPECT_NEAR(kernel_moment(6, 0), 1.0 / 604800.0, 1e-17);
  for (int i = 0; i <= 1000; ++i) EXPECT_GE(kernel_eval(6, i / 1000.0), -1e-17);
  EXPECT_THROW(kernel_moment(2, 7), InvalidArgument);
}

TEST(PeanoRemainder, DegreeSixPolynomialsOnUnitInterval) {
  // R(f) = ∫ T_6 f^(6) = 720·c6·∫T_6 for f of degree 6; compare with the
  // exact rule error computed in rational arithmetic.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = oracle::random_poly(rng, 6);
    const auto rc = oracle::to_rational(c);
    const auto dc = oracle::poly_derivative(rc);
    const Rational rule = (7 * oracle::poly_eval(rc, 0) + 16 * oracle::poly_eval(rc, Rational(1, 2)) +
                           7 * oracle::poly_eval(rc, 1)) / 30 -
                          (oracle::poly_eval(dc, 1) - oracle::poly_eval(dc, 0)) / 60;
    const double true_error = oracle::to_double(oracle::poly_integral(rc, 0, 1) - rule);
    const double peano = 720.0 * c[6] * kernel_moment(6, 0);
    EXPECT_NEAR(peano, true_error, 1e-13);
  }
}

TEST(PeanoRemainder, ScaledKernelReproducesPanelError) {
  // The panel error is formed in long double (exact integral minus the rule
  // formula) so rounding in the rule does not mask the identity.
  using boost::math::quadrature::gauss_kronrod;
  for (const auto& cf : oracle::corpus()) {
    for (auto [a, b] : {std::pair{0.0L, 1.0L}, {-1.0L, 1.5L}, {0.5L, 2.0L}}) {
      const Interval iv(static_cast<double>(a), static_cast<double>(b));
      const long double len = b - a, mid = (a + b) / 2;
      const long double exact = gauss_kronrod<long double, 61>::integrate(
          [&](long double x) { return cf.derivative(0, x); }, a, b, 8, 1e-18L);
      const long double rule =
          len / 30 * (7 * cf.derivative(0, a) + 16 * cf.derivative(0, mid) + 7 * cf.derivative(0, b)) -
          len * len / 60 * (cf.derivative(1, b) - cf.derivative(1, a));
      const long double err = exact - rule;
      for (int k = 2; k <= 6; ++k) {
        auto integrand = [&](long double t) {
          return static_cast<long double>(kernel_eval_scaled(k, static_cast<double>(t), iv)) *
                 cf.derivative(k, t);
        };
        const long double rep = gauss_kronrod<long double, 61>::integrate(integrand, a, mid, 0, 0) +
                                gauss_kronrod<long double, 61>::integrate(integrand, mid, b, 0, 0);
        EXPECT_LE(std::abs(rep - err), 1e-10L * std::abs(err))
            << cf.name << " k=" << k << " [" << static_cast<double>(a) << ","
            << static_cast<double>(b) << "] err=" << static_cast<double>(err);
      }
    }
  }
}

}  // namespace
