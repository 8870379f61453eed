#pragma once

#include <array>
#include <cstddef>

namespace corrquad {

/// Exact rational coefficient, kept as a ratio until evaluated to binary64.
struct Ratio {
  long long num;
  long long den;

  constexpr double to_double() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

/// Dense polynomial in ascending powers, evaluated by Horner's scheme.
template <std::size_t Degree>
struct Polynomial {
  std::array<double, Degree + 1> coeffs{};

  static constexpr Polynomial from_ratios(
      const std::array<Ratio, Degree + 1>& ratios) noexcept {
    Polynomial p;
    for (std::size_t i = 0; i <= Degree; ++i) p.coeffs[i] = ratios[i].to_double();
    return p;
  }

  constexpr double operator()(double x) const noexcept {
    double acc = coeffs[Degree];
    for (std::size_t i = Degree; i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }

  /// Definite integral of p(x)·x^j over [lo, hi], via the antiderivative.
  constexpr double integrate_times_power(std::size_t j, double lo,
                                         double hi) const noexcept {
    double result = 0.0;
    for (std::size_t i = 0; i <= Degree; ++i) {
      const std::size_t e = i + j + 1;
      double plo = 1.0, phi = 1.0;
      for (std::size_t r = 0; r < e; ++r) {
        plo *= lo;
        phi *= hi;
      }
      result += coeffs[i] * (phi - plo) / static_cast<double>(e);
    }
    return result;
  }
};

}  // namespace corrquad
