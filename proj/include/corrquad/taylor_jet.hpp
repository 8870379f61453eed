#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace corrquad {

/// Truncated Taylor series c_0 + c_1 t + ... + c_6 t^6 about a point x0,
/// with c_j = f^(j)(x0)/j!. All arithmetic is exact truncated-series
/// arithmetic (Cauchy products and the usual recurrences).
class TaylorJet {
 public:
  static constexpr int kOrder = 6;
  static constexpr std::size_t kSize = kOrder + 1;
  using Coeffs = std::array<double, kSize>;

  constexpr TaylorJet() = default;
  constexpr explicit TaylorJet(const Coeffs& c) : c_(c) {}

  static constexpr TaylorJet constant(double v) {
    TaylorJet j;
    j.c_[0] = v;
    return j;
  }
  /// The identity function seeded at x0.
  static constexpr TaylorJet variable(double x0) {
    TaylorJet j;
    j.c_[0] = x0;
    j.c_[1] = 1.0;
    return j;
  }

  constexpr double operator[](std::size_t i) const { return c_[i]; }
  constexpr double& operator[](std::size_t i) { return c_[i]; }
  constexpr const Coeffs& coeffs() const noexcept { return c_; }
  constexpr double value() const noexcept { return c_[0]; }

  /// f^(k)(x0) = c_k · k!
  constexpr double derivative(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[static_cast<std::size_t>(k)] * fact;
  }

  /// True when every coefficient beyond c_0 is zero.
  constexpr bool is_constant() const noexcept {
    for (std::size_t i = 1; i < kSize; ++i)
      if (c_[i] != 0.0) return false;
    return true;
  }

  constexpr TaylorJet operator-() const {
    TaylorJet r;
    for (std::size_t i = 0; i < kSize; ++i) r.c_[i] = -c_[i];
    return r;
  }

  friend constexpr TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet r;
    for (std::size_t i = 0; i < kSize; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend constexpr TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet r;
    for (std::size_t i = 0; i < kSize; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend constexpr TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet r;
    for (std::size_t n = 0; n < kSize; ++n) {
      double s = 0.0;
      for (std::size_t j = 0; j <= n; ++j) s += a.c_[j] * b.c_[n - j];
      r.c_[n] = s;
    }
    return r;
  }
  /// Requires b[0] != 0.
  friend constexpr TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet q;
    for (std::size_t n = 0; n < kSize; ++n) {
      double s = a.c_[n];
      for (std::size_t j = 0; j < n; ++j) s -= q.c_[j] * b.c_[n - j];
      q.c_[n] = s / b.c_[0];
    }
    return q;
  }

  friend bool operator==(const TaylorJet&, const TaylorJet&) = default;

 private:
  Coeffs c_{};
};

inline TaylorJet exp(const TaylorJet& a) {
  TaylorJet e;
  e[0] = std::exp(a[0]);
  for (std::size_t n = 1; n < TaylorJet::kSize; ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) s += static_cast<double>(j) * a[j] * e[n - j];
    e[n] = s / static_cast<double>(n);
  }
  return e;
}

/// Requires a[0] > 0.
inline TaylorJet log(const TaylorJet& a) {
  TaylorJet l;
  l[0] = std::log(a[0]);
  for (std::size_t n = 1; n < TaylorJet::kSize; ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j < n; ++j) s += static_cast<double>(j) * l[j] * a[n - j];
    l[n] = (a[n] - s / static_cast<double>(n)) / a[0];
  }
  return l;
}

struct SinCos {
  TaylorJet sin;
  TaylorJet cos;
};

inline SinCos sincos(const TaylorJet& a) {
  SinCos r;
  r.sin[0] = std::sin(a[0]);
  r.cos[0] = std::cos(a[0]);
  for (std::size_t n = 1; n < TaylorJet::kSize; ++n) {
    double s = 0.0, c = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double ja = static_cast<double>(j) * a[j];
      s += ja * r.cos[n - j];
      c -= ja * r.sin[n - j];
    }
    r.sin[n] = s / static_cast<double>(n);
    r.cos[n] = c / static_cast<double>(n);
  }
  return r;
}

inline TaylorJet sin(const TaylorJet& a) { return sincos(a).sin; }
inline TaylorJet cos(const TaylorJet& a) { return sincos(a).cos; }
inline TaylorJet tan(const TaylorJet& a) {
  const SinCos sc = sincos(a);
  return sc.sin / sc.cos;
}

/// Requires a[0] > 0 (or a constant jet with a[0] == 0).
inline TaylorJet sqrt(const TaylorJet& a) {
  TaylorJet r;
  r[0] = std::sqrt(a[0]);
  if (r[0] == 0.0) return r;
  for (std::size_t n = 1; n < TaylorJet::kSize; ++n) {
    double s = a[n];
    for (std::size_t j = 1; j < n; ++j) s -= r[j] * r[n - j];
    r[n] = s / (2.0 * r[0]);
  }
  return r;
}

/// a^n by binary powering; n < 0 requires a[0] != 0.
inline TaylorJet pow(const TaylorJet& a, long long n) {
  TaylorJet result = TaylorJet::constant(1.0);
  TaylorJet base = a;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-n)
                               : static_cast<unsigned long long>(n);
  while (e != 0) {
    if (e & 1ULL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return n < 0 ? TaylorJet::constant(1.0) / result : result;
}

/// a^r for a constant real exponent; requires a[0] > 0.
inline TaylorJet pow(const TaylorJet& a, double r) {
  TaylorJet p;
  p[0] = std::pow(a[0], r);
  for (std::size_t n = 1; n < TaylorJet::kSize; ++n) {
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double coef = r * static_cast<double>(j) - static_cast<double>(n - j);
      s += coef * a[j] * p[n - j];
    }
    p[n] = s / (static_cast<double>(n) * a[0]);
  }
  return p;
}

/// a^b = exp(b·log a); requires a[0] > 0.
inline TaylorJet pow(const TaylorJet& a, const TaylorJet& b) {
  return exp(b * log(a));
}

}  // namespace corrquad
