#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "corrquad/errors.hpp"
#include "corrquad/integrand.hpp"
#include "corrquad/interval.hpp"
#include "corrquad/peano_kernels.hpp"

namespace corrquad {

enum class RangeProvenance { UserSupplied, SampledEstimate };

/// Bounds γ_k ≤ f^(k) ≤ Γ_k over the integration domain.
struct DerivativeRange {
  int k;
  double gamma;
  double Gamma;
  RangeProvenance provenance = RangeProvenance::UserSupplied;

  DerivativeRange(int order, double lo, double hi,
                  RangeProvenance prov = RangeProvenance::UserSupplied)
      : k(order), gamma(lo), Gamma(hi), provenance(prov) {
    if (!(lo <= hi)) throw InvalidArgument("invalid range: gamma > Gamma");
  }

  bool rigorous() const noexcept {
    return provenance == RangeProvenance::UserSupplied;
  }
  /// max(|γ|, |Γ|), the stand-in for ‖f^(k)‖∞ when only a range is known.
  double sup_norm() const noexcept {
    return std::max(std::abs(gamma), std::abs(Gamma));
  }
};

/// Endpoint secant of f^(k): the plain difference on [0, 1], the divided
/// difference on any other interval. Equals the mean of f^(k+1).
struct SecantSlope {
  int k;
  double value;
};

inline SecantSlope secant_slope(const Integrand& f, int k, const Interval& iv) {
  const double diff = f.derivative(k, iv.b()) - f.derivative(k, iv.a());
  return {k, diff / iv.length()};
}

struct BoundReport {
  int k = 0;
  double bound_a12 = 0.0;      // (Γ − γ)/2 · C_k, scaled
  double bound_a13 = 0.0;      // (S − γ) · B_k, scaled
  double bound_a14 = 0.0;      // (Γ − S) · B_k, scaled
  double peano_classic = 0.0;  // C_k · ‖f^(k)‖∞, scaled
  double best = 0.0;
  bool rigorous = true;
};

namespace detail {

inline void check_bound_inputs(int k, const DerivativeRange& range,
                               const SecantSlope& s) {
  if (k < 2 || k > 5) throw InvalidArgument("bound order k must lie in 2..5");
  if (range.k != k) throw InvalidArgument("derivative range order does not match k");
  if (s.k != k - 1) throw InvalidArgument("secant slope must be of order k - 1");
  const double slack =
      1e-10 * std::max({1.0, std::abs(range.gamma), std::abs(range.Gamma)});
  if (s.value < range.gamma - slack || s.value > range.Gamma + slack)
    throw InconsistentRange("secant slope lies outside [gamma, Gamma]");
}

inline double ipow(double x, int p) noexcept {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// c_scale multiplies C_k, b_scale multiplies B_k.
inline BoundReport assemble(int k, const DerivativeRange& range,
                            const SecantSlope& s, double c_scale,
                            double b_scale) {
  check_bound_inputs(k, range, s);
  const double C = kernel_abs_integral(k) * c_scale;
  const double B = kernel_max_abs(k) * b_scale;
  BoundReport r;
  r.k = k;
  r.bound_a12 = (range.Gamma - range.gamma) / 2.0 * C;
  r.bound_a13 = std::max(0.0, s.value - range.gamma) * B;
  r.bound_a14 = std::max(0.0, range.Gamma - s.value) * B;
  r.peano_classic = C * range.sup_norm();
  r.best = std::min({r.bound_a12, r.bound_a13, r.bound_a14, r.peano_classic});
  r.rigorous = range.rigorous();
  return r;
}

}  // namespace detail

/// Remainder bounds for the rule on [0, 1]; S is f^(k−1)(1) − f^(k−1)(0).
inline BoundReport unit_bounds(int k, const DerivativeRange& range,
                               const SecantSlope& s) {
  return detail::assemble(k, range, s, 1.0, 1.0);
}

/// Bounds for one panel pair [x_{j−1}, x_{j+1}] of width 2h. S is the
/// divided difference of f^(k−1) over the panel.
inline BoundReport panel_bounds(int k, const DerivativeRange& range,
                                const SecantSlope& s, double h) {
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  // D_k/C_k = E_k/B_k = 2^(k+1)
  const double scale = std::ldexp(detail::ipow(h, k + 1), k + 1);
  return detail::assemble(k, range, s, scale, scale);
}

/// Composite bounds over [a, b] = 2n panels of width h. Computed as the
/// panel bound times n, so n = 1 reproduces panel_bounds bit for bit.
/// S is the divided difference of f^(k−1) over the whole of [a, b].
inline BoundReport composite_bounds(int k, const DerivativeRange& range,
                                    const SecantSlope& s, double h,
                                    double length) {
  if (!(length > 0.0)) throw InvalidArgument("length must be positive");
  BoundReport r = panel_bounds(k, range, s, h);
  const double pairs = length / (2.0 * h);
  r.bound_a12 *= pairs;
  r.bound_a13 *= pairs;
  r.bound_a14 *= pairs;
  r.peano_classic *= pairs;
  r.best *= pairs;
  return r;
}

/// D_6·‖f^(6)‖∞·h^7 for one panel pair.
inline double panel_bound_k6(double sup_f6, double h) {
  if (!(sup_f6 >= 0.0)) throw InvalidArgument("sup |f^(6)| must be non-negative");
  if (!(h > 0.0)) throw InvalidArgument("h must be positive");
  return scaled_constants(6).D() * sup_f6 * detail::ipow(h, 7);
}

/// ½·D_6·h^6·(b − a)·‖f^(6)‖∞ = h^6 (b − a) ‖f^(6)‖∞ / 9450.
inline double composite_bound_k6(double sup_f6, double h, double length) {
  if (!(sup_f6 >= 0.0)) throw InvalidArgument("sup |f^(6)| must be non-negative");
  if (!(h > 0.0) || !(length > 0.0))
    throw InvalidArgument("h and length must be positive");
  return 0.5 * scaled_constants(6).D() * detail::ipow(h, 6) * length * sup_f6;
}

struct MidpointBounds {
  double classic;       // (b − a)³ M₂ / 24
  double corrected;     // (b − a)³ M₂ / (18√3)
  double corrected_h4;  // 7 M₄ (b − a)⁵ / 5760
};

inline MidpointBounds midpoint_bounds(double M2, double M4, double length) {
  if (!(M2 >= 0.0) || !(M4 >= 0.0))
    throw InvalidArgument("derivative norms must be non-negative");
  if (!(length >= 0.0)) throw InvalidArgument("length must be non-negative");
  const double l3 = length * length * length;
  return {l3 * M2 / 24.0, l3 * M2 / (18.0 * std::numbers::sqrt3),
          7.0 * M4 * l3 * length * length / 5760.0};
}

/// Standard composite Simpson bound ‖f^(4)‖∞ h⁴ (b − a) / 180.
inline double simpson_classic_bound(double sup_f4, double h, double length) {
  if (!(sup_f4 >= 0.0)) throw InvalidArgument("sup |f^(4)| must be non-negative");
  if (!(h > 0.0) || !(length >= 0.0))
    throw InvalidArgument("h must be positive and length non-negative");
  return sup_f4 * detail::ipow(h, 4) * length / 180.0;
}

struct RangeEstimateOptions {
  int n_samples = 64;
  double safety = 1.05;
};

/// Sampled estimate of [inf f^(k), sup f^(k)] on `iv`.
///
/// Samples at Chebyshev–Lobatto points, polishes the extreme samples with a
/// bracketed Brent search over the neighbouring cells, then widens the
/// bracket about its midpoint by `safety`. Never rigorous.
inline DerivativeRange estimate_derivative_range(const Integrand& f, int k,
                                                 const Interval& iv,
                                                 RangeEstimateOptions opts = {}) {
  if (k < 1 || k > 6) throw InvalidArgument("derivative order must lie in 1..6");
  if (!f.has_order(k)) throw CapabilityError(k, f.max_order());
  if (opts.n_samples < 8) throw InvalidArgument("n_samples must be at least 8");
  if (!(opts.safety >= 1.0)) throw InvalidArgument("safety factor must be >= 1");

  const int n = opts.n_samples;
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> ys(xs.size());
  const double mid = iv.midpoint();
  const double half = 0.5 * iv.length();
  for (int i = 0; i < n; ++i) {
    double x = mid - half * std::cos(std::numbers::pi * i / (n - 1));
    if (i == 0) x = iv.a();
    if (i == n - 1) x = iv.b();
    xs[static_cast<std::size_t>(i)] = x;
    ys[static_cast<std::size_t>(i)] = f.derivative(k, x);
  }

  const auto polish = [&](std::size_t i, double sign) {
    const double lo = xs[i == 0 ? 0 : i - 1];
    const double hi = xs[std::min(i + 1, xs.size() - 1)];
    double best = sign * ys[i];
    if (hi > lo) {
      const auto found = boost::math::tools::brent_find_minima(
          [&](double x) { return sign * f.derivative(k, x); }, lo, hi,
          std::numeric_limits<double>::digits / 2);
      best = std::min(best, found.second);
    }
    return sign * best;
  };

  const auto lo_it = std::min_element(ys.begin(), ys.end());
  const auto hi_it = std::max_element(ys.begin(), ys.end());
  const double lo = polish(static_cast<std::size_t>(lo_it - ys.begin()), 1.0);
  const double hi = polish(static_cast<std::size_t>(hi_it - ys.begin()), -1.0);

  const double centre = 0.5 * (lo + hi);
  const double radius = 0.5 * (hi - lo) * opts.safety;
  return DerivativeRange(k, std::min(lo, centre - radius),
                         std::max(hi, centre + radius),
                         RangeProvenance::SampledEstimate);
}

}  // namespace corrquad
