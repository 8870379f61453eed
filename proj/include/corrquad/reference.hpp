#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "corrquad/errors.hpp"
#include "corrquad/integrand.hpp"
#include "corrquad/interval.hpp"
#include "corrquad/quadrature.hpp"
#include "corrquad/summation.hpp"

namespace corrquad {

struct ReferenceResult {
  double value = 0.0;
  double est_abs_error = 0.0;
  int subdivisions = 0;
};

struct ReferenceOptions {
  int max_subdivisions = 10000;
};

namespace detail {

// 15-point Kronrod abscissae on [−1, 1] (non-negative half, descending) and
// weights; the 7-point Gauss rule uses the odd-indexed abscissae.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  long long order;  // creation order, breaks ties deterministically

  bool operator<(const Segment& o) const noexcept {
    if (error != o.error) return error < o.error;
    return order > o.order;
  }
};

inline Segment kronrod_segment(const Integrand& f, double a, double b,
                               long long order) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), order};
}

}  // namespace detail

/// Globally adaptive Gauss–Kronrod (7/15) integration with bisection of the
/// worst segment. `tol` is an absolute tolerance on the summed error
/// estimate. Throws ConvergenceError, carrying the best value, when the
/// subdivision budget runs out.
inline ReferenceResult reference_integral(const Integrand& f, const Interval& iv,
                                          double tol,
                                          ReferenceOptions opts = {}) {
  if (!(tol >= 1e-14)) throw InvalidArgument("reference tolerance must be >= 1e-14");
  long long counter = 0;
  std::vector<detail::Segment> heap{detail::kronrod_segment(f, iv.a(), iv.b(), counter++)};
  const auto exact_total = [&heap] {
    std::vector<double> errs;
    errs.reserve(heap.size());
    for (const auto& s : heap) errs.push_back(s.error);
    return pairwise_sum(errs);
  };
  double total_error = heap.front().error;
  int subdivisions = 0;

  for (;;) {
    if (total_error <= tol) {
      // The running total drifts; confirm before stopping.
      total_error = exact_total();
      if (total_error <= tol) break;
    }
    if (subdivisions >= opts.max_subdivisions) break;
    std::pop_heap(heap.begin(), heap.end());
    const detail::Segment worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.pop_back();
    const auto left = detail::kronrod_segment(f, worst.a, mid, counter++);
    const auto right = detail::kronrod_segment(f, mid, worst.b, counter++);
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    total_error += left.error + right.error - worst.error;
    ++subdivisions;
  }

  std::vector<detail::Segment> segs = std::move(heap);
  std::sort(segs.begin(), segs.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  std::vector<double> values, errors;
  for (const auto& s : segs) {
    values.push_back(s.value);
    errors.push_back(s.error);
  }
  ReferenceResult result{pairwise_sum(values), pairwise_sum(errors), subdivisions};
  if (result.est_abs_error > tol) {
    throw ConvergenceError("reference integral did not reach the requested tolerance",
                           result.value, result.est_abs_error);
  }
  return result;
}

struct ConvergenceRow {
  int n_pairs;
  double h;
  double approx;
  double abs_error;
};

struct ConvergenceTable {
  RuleId rule = RuleId::ModifiedSimpson;
  double reference = 0.0;
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log(error) against log(h) over fit_window.
  std::optional<double> fitted_order;
  std::vector<std::size_t> fit_window;
};

struct ConvergenceOptions {
  double reference_tol = 1e-13;
  double floor = 1e-13;  // rows at or below this are rounding-dominated
  double onset = 1e-2;   // rows above this are pre-asymptotic
};

/// Slope of the least-squares line through (log h, log error) over the rows
/// with floor < error ≤ onset; empty window (and no order) if fewer than two.
inline void fit_order(ConvergenceTable& table, const ConvergenceOptions& opts) {
  table.fit_window.clear();
  table.fitted_order.reset();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double e = table.rows[i].abs_error;
    if (e > opts.floor && e <= opts.onset) table.fit_window.push_back(i);
  }
  if (table.fit_window.size() < 2) return;
  const double m = static_cast<double>(table.fit_window.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i : table.fit_window) {
    sx += std::log(table.rows[i].h);
    sy += std::log(table.rows[i].abs_error);
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i : table.fit_window) {
    const double dx = std::log(table.rows[i].h) - mx;
    sxy += dx * (std::log(table.rows[i].abs_error) - my);
    sxx += dx * dx;
  }
  table.fitted_order = sxy / sxx;
}

namespace detail {

inline void check_study_inputs(RuleId rule, const std::vector<int>& n_list) {
  if (rule != RuleId::Simpson && rule != RuleId::ModifiedSimpson)
    throw InvalidArgument("convergence studies support the composite Simpson rules only");
  if (n_list.empty()) throw InvalidArgument("n_list must be non-empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw InvalidArgument("pair counts must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw InvalidArgument("n_list must be strictly increasing");
  }
}

inline ConvergenceTable run_study(RuleId rule, const Integrand& f, const Interval& iv,
                                  const std::vector<int>& n_list, double reference,
                                  const ConvergenceOptions& opts) {
  ConvergenceTable table;
  table.rule = rule;
  table.reference = reference;
  for (int n : n_list) {
    const UniformGrid grid(iv, n);
    const double approx = integrate(rule, f, grid).value;
    table.rows.push_back({n, grid.h(), approx, std::abs(approx - reference)});
  }
  fit_order(table, opts);
  return table;
}

}  // namespace detail

/// Runs a composite rule at each pair count and measures its error against
/// the adaptive reference.
inline ConvergenceTable convergence_study(RuleId rule, const Integrand& f,
                                          const Interval& iv,
                                          const std::vector<int>& n_list,
                                          ConvergenceOptions opts = {}) {
  detail::check_study_inputs(rule, n_list);
  const double reference = reference_integral(f, iv, opts.reference_tol).value;
  return detail::run_study(rule, f, iv, n_list, reference, opts);
}

struct RuleComparison {
  ConvergenceTable simpson;
  ConvergenceTable modified;
  std::vector<double> error_ratio;  // Simpson error / modified error, per h
};

inline RuleComparison compare_rules(const Integrand& f, const Interval& iv,
                                    const std::vector<int>& n_list,
                                    ConvergenceOptions opts = {}) {
  detail::check_study_inputs(RuleId::ModifiedSimpson, n_list);
  const double reference = reference_integral(f, iv, opts.reference_tol).value;
  RuleComparison out{detail::run_study(RuleId::Simpson, f, iv, n_list, reference, opts),
                     detail::run_study(RuleId::ModifiedSimpson, f, iv, n_list, reference, opts),
                     {}};
  for (std::size_t i = 0; i < n_list.size(); ++i)
    out.error_ratio.push_back(out.simpson.rows[i].abs_error / out.modified.rows[i].abs_error);
  return out;
}

namespace detail {
inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// h,approx,abs_error rows followed by a `fitted_order,<value>` trailer
/// (value left empty when the fit window is empty).
inline void write_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "h,approx,abs_error\n";
  for (const auto& r : table.rows) {
    os << detail::csv_number(r.h) << ',' << detail::csv_number(r.approx) << ','
       << detail::csv_number(r.abs_error) << '\n';
  }
  os << "fitted_order,"
     << (table.fitted_order ? detail::csv_number(*table.fitted_order) : std::string())
     << '\n';
}

/// h,simpson_abs_error,msimpson_abs_error,ratio rows plus one fitted_order
/// trailer per rule.
inline void write_csv(std::ostream& os, const RuleComparison& cmp) {
  os << "h,simpson_abs_error,msimpson_abs_error,ratio\n";
  for (std::size_t i = 0; i < cmp.error_ratio.size(); ++i) {
    os << detail::csv_number(cmp.simpson.rows[i].h) << ','
       << detail::csv_number(cmp.simpson.rows[i].abs_error) << ','
       << detail::csv_number(cmp.modified.rows[i].abs_error) << ','
       << detail::csv_number(cmp.error_ratio[i]) << '\n';
  }
  auto trailer = [&](const char* name, const ConvergenceTable& t) {
    os << name << ','
       << (t.fitted_order ? detail::csv_number(*t.fitted_order) : std::string()) << '\n';
  };
  trailer("fitted_order_simpson", cmp.simpson);
  trailer("fitted_order_msimpson", cmp.modified);
}

}  // namespace corrquad
