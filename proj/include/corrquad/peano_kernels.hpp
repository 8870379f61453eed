#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "corrquad/errors.hpp"
#include "corrquad/interval.hpp"
#include "corrquad/polynomial.hpp"

// Peano kernels of the unit-interval modified Simpson rule
//
//   ∫₀¹ f = [7f(0) + 16f(½) + 7f(1)]/30 − [f'(1) − f'(0)]/60 + R_k(f),
//   R_k(f) = ∫₀¹ T_k(x) f^(k)(x) dx,   k = 2..6,
//
// with T_k = (−1)^k P_k on [0, ½) and (−1)^k Q_k on [½, 1]. The factored
// forms are
//
//   P_2 = x²/2 − 7x/30 + 1/60            Q_2 = x²/2 − 23x/30 + 17/60
//   P_3 = x(x − 1/5)(x − 1/2)/3!         Q_3 = (x − 1)(x − 1/2)(x − 4/5)/3!
//   P_4 = x²(x − 1/3)(x − 3/5)/4!        Q_4 = (x − 1)²(x − 2/3)(x − 2/5)/4!
//   P_5 = x³(x − 1/2)(x − 2/3)/5!        Q_5 = (x − 1)³(x − 1/2)(x − 1/3)/5!
//   P_6 = x⁴(x² − 7x/5 + 1/2)/6!         Q_6 = (x − 1)⁴(x² − 3x/5 + 1/10)/6!
//
// Q_3's last root is 4/5, the mirror image of P_3's 1/5. A root of 4/25
// would break ∫T_3 = 0 and would not reproduce C_3 or B_3.
//
// Every pair satisfies Q_k(x) = (−1)^k P_k(1 − x). Coefficients below are the
// exact rational expansions (ascending powers).

namespace corrquad {

/// Kernel order k in 2..6.
class KernelId {
 public:
  constexpr KernelId(int k) : k_(k) {  // NOLINT: implicit by intent
    if (k < 2 || k > 6) throw InvalidArgument("kernel order k must lie in 2..6");
  }
  constexpr int value() const noexcept { return k_; }
  constexpr operator int() const noexcept { return k_; }

 private:
  int k_;
};

/// a + s·√19 with rational a and s; the form every kernel constant takes.
struct ClosedForm {
  Ratio rational{0, 1};
  Ratio sqrt19{0, 1};

  double value() const noexcept {
    return rational.to_double() + sqrt19.to_double() * std::sqrt(19.0);
  }

  /// Multiply by 2^p exactly (numerators only).
  constexpr ClosedForm scaled_pow2(int p) const noexcept {
    const long long m = 1LL << p;
    return {{rational.num * m, rational.den}, {sqrt19.num * m, sqrt19.den}};
  }
};

struct KernelConstants {
  int k;
  ClosedForm C_form;                  // ∫₀¹ |T_k|
  ClosedForm D_form;                  // 2^(k+1)·C_k
  std::optional<ClosedForm> B_form;   // max |T_k|, k ≤ 5
  std::optional<ClosedForm> E_form;   // 2^(k+1)·B_k

  double C() const noexcept { return C_form.value(); }
  double D() const noexcept { return D_form.value(); }
  std::optional<double> B() const {
    return B_form ? std::optional<double>(B_form->value()) : std::nullopt;
  }
  std::optional<double> E() const {
    return E_form ? std::optional<double>(E_form->value()) : std::nullopt;
  }
};

struct PeanoKernel {
  int k;
  Polynomial<6> left;   // P_k on [0, ½)
  Polynomial<6> right;  // Q_k on [½, 1]
  double sign;          // (−1)^k

  // Q_k(x) = (−1)^k P_k(1 − x). Evaluating the right half through the
  // mirror keeps the zero at x = 1 exact; 1 − x is exact on [½, 1].
  double operator()(double x) const noexcept {
    return x < 0.5 ? sign * left(x) + 0.0 : left(1.0 - x);  // + 0.0 drops -0
  }
};

namespace detail {

using CoeffRow = std::array<Ratio, 7>;

inline constexpr std::array<CoeffRow, 5> kLeftCoeffs{{
    {{{1, 60}, {-7, 30}, {1, 2}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}},
    {{{0, 1}, {1, 60}, {-7, 60}, {1, 6}, {0, 1}, {0, 1}, {0, 1}}},
    {{{0, 1}, {0, 1}, {1, 120}, {-7, 180}, {1, 24}, {0, 1}, {0, 1}}},
    {{{0, 1}, {0, 1}, {0, 1}, {1, 360}, {-7, 720}, {1, 120}, {0, 1}}},
    {{{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 1440}, {-7, 3600}, {1, 720}}},
}};

inline constexpr std::array<CoeffRow, 5> kRightCoeffs{{
    {{{17, 60}, {-23, 30}, {1, 2}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}},
    {{{-1, 15}, {17, 60}, {-23, 60}, {1, 6}, {0, 1}, {0, 1}, {0, 1}}},
    {{{1, 90}, {-1, 15}, {17, 120}, {-23, 180}, {1, 24}, {0, 1}, {0, 1}}},
    {{{-1, 720}, {1, 90}, {-1, 30}, {17, 360}, {-23, 720}, {1, 120}, {0, 1}}},
    {{{1, 7200}, {-1, 720}, {1, 180}, {-1, 90}, {17, 1440}, {-23, 3600}, {1, 720}}},
}};

// C_k for k = 2..6.
inline constexpr std::array<ClosedForm, 5> kAbsIntegral{{
    {{0, 1}, {19, 10125}},
    {{253, 360000}, {0, 1}},
    {{1, 14580}, {0, 1}},
    {{1, 115200}, {0, 1}},
    {{1, 604800}, {0, 1}},
}};

// B_k for k = 2..5.
inline constexpr std::array<ClosedForm, 4> kMaxAbs{{
    {{1, 40}, {0, 1}},
    {{7, 20250}, {19, 81000}},
    {{1, 5760}, {0, 1}},
    {{1, 58320}, {0, 1}},
}};

}  // namespace detail

/// Coefficients of P_k and Q_k as exact ratios (ascending powers).
inline const detail::CoeffRow& left_ratios(KernelId k) {
  return detail::kLeftCoeffs[static_cast<std::size_t>(k.value() - 2)];
}
inline const detail::CoeffRow& right_ratios(KernelId k) {
  return detail::kRightCoeffs[static_cast<std::size_t>(k.value() - 2)];
}

inline PeanoKernel peano_kernel(KernelId k) {
  return {k.value(), Polynomial<6>::from_ratios(left_ratios(k)),
          Polynomial<6>::from_ratios(right_ratios(k)),
          (k.value() % 2 == 0) ? 1.0 : -1.0};
}

/// T_k(x) on [0, 1]; the value at x = ½ comes from the Q_k branch.
inline double kernel_eval(KernelId k, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("kernel argument must lie in [0, 1]");
  return peano_kernel(k)(x);
}

/// T̃_k(t) = (b − a)^k · T_k((t − a)/(b − a)), so that
/// ∫ₐᵇ T̃_k f^(k) is the remainder of the rule on [a, b].
inline double kernel_eval_scaled(KernelId k, double t, const Interval& iv) {
  if (!iv.contains(t)) throw DomainError("scaled kernel argument must lie in [a, b]");
  const double len = iv.length();
  double x = (t - iv.a()) / len;
  if (x > 1.0) x = 1.0;
  double scale = 1.0;
  for (int i = 0; i < k.value(); ++i) scale *= len;
  return scale * peano_kernel(k)(x);
}

/// C_k = ∫₀¹ |T_k|.
inline double kernel_abs_integral(KernelId k) {
  return detail::kAbsIntegral[static_cast<std::size_t>(k.value() - 2)].value();
}

/// B_k = max |T_k| on [0, 1]; defined for k ≤ 5 only.
inline double kernel_max_abs(KernelId k) {
  if (k.value() > 5) throw InvalidArgument("B_k is defined for k <= 5 only");
  return detail::kMaxAbs[static_cast<std::size_t>(k.value() - 2)].value();
}

/// ∫₀¹ T_k(x)·x^j dx by exact piecewise antiderivatives, j ≤ 6.
inline double kernel_moment(KernelId k, int j) {
  if (j < 0 || j > 6) throw InvalidArgument("moment power j must lie in 0..6");
  const PeanoKernel kern = peano_kernel(k);
  const auto p = static_cast<std::size_t>(j);
  return kern.sign * (kern.left.integrate_times_power(p, 0.0, 0.5) +
                      kern.right.integrate_times_power(p, 0.5, 1.0));
}

/// (C_k, B_k, D_k = 2^(k+1) C_k, E_k = 2^(k+1) B_k); B and E absent for k = 6.
inline KernelConstants scaled_constants(KernelId k) {
  const auto idx = static_cast<std::size_t>(k.value() - 2);
  KernelConstants out{k.value(), detail::kAbsIntegral[idx],
                      detail::kAbsIntegral[idx].scaled_pow2(k.value() + 1),
                      std::nullopt, std::nullopt};
  if (k.value() <= 5) {
    out.B_form = detail::kMaxAbs[idx];
    out.E_form = detail::kMaxAbs[idx].scaled_pow2(k.value() + 1);
  }
  return out;
}

}  // namespace corrquad
