#pragma once

#include <cmath>

#include "corrquad/errors.hpp"

namespace corrquad {

/// Closed integration domain [a, b] with a < b.
class Interval {
 public:
  Interval(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b))
      throw InvalidArgument("interval endpoints must be finite");
    if (!(a < b))
      throw InvalidArgument("interval requires a < b");
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }
  bool contains(double t) const noexcept { return a_ <= t && t <= b_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

/// Uniform partition a = x_0 < x_1 < ... < x_{2n} = b into n panel pairs.
///
/// Taking the pair count rather than a subinterval count makes odd totals
/// unrepresentable.
class UniformGrid {
 public:
  UniformGrid(Interval interval, int n_pairs)
      : interval_(interval), n_pairs_(n_pairs) {
    if (n_pairs < 1) throw InvalidArgument("grid requires n_pairs >= 1");
  }

  const Interval& interval() const noexcept { return interval_; }
  int n_pairs() const noexcept { return n_pairs_; }
  int subintervals() const noexcept { return 2 * n_pairs_; }
  int node_count() const noexcept { return 2 * n_pairs_ + 1; }
  double h() const noexcept {
    return interval_.length() / static_cast<double>(2 * n_pairs_);
  }

  /// x_j = a + j·h, with the last node pinned to b.
  double node(int j) const noexcept {
    if (j == 2 * n_pairs_) return interval_.b();
    return interval_.a() + static_cast<double>(j) * h();
  }

 private:
  Interval interval_;
  int n_pairs_;
};

}  // namespace corrquad
