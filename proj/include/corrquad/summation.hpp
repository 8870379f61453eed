#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace corrquad {

/// Sum with a running compensation term. The value is `sum + correction`.
struct CompensatedSum {
  double sum = 0.0;
  double correction = 0.0;

  double value() const noexcept { return sum + correction; }
};

namespace detail {

// Knuth's TwoSum: s + e == a + b exactly.
inline void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline CompensatedSum combine(const CompensatedSum& lhs,
                              const CompensatedSum& rhs) noexcept {
  CompensatedSum out;
  double err = 0.0;
  two_sum(lhs.sum, rhs.sum, out.sum, err);
  out.correction = lhs.correction + rhs.correction + err;
  return out;
}

inline constexpr std::size_t kPairwiseLeaf = 16;

inline CompensatedSum pairwise_node(std::span<const double> terms) noexcept {
  if (terms.size() <= kPairwiseLeaf) {
    CompensatedSum acc;
    for (double t : terms) {
      double err = 0.0;
      two_sum(acc.sum, t, acc.sum, err);
      acc.correction += err;
    }
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return combine(pairwise_node(terms.first(half)),
                 pairwise_node(terms.subspan(half)));
}

}  // namespace detail

/// Pairwise (tree) summation with TwoSum compensation at every node.
///
/// The tree shape depends only on `terms.size()`, and terms are visited
/// low-to-high, so the result is bitwise reproducible for a given input.
inline double pairwise_sum(std::span<const double> terms) noexcept {
  if (terms.empty()) return 0.0;
  return detail::pairwise_node(terms).value();
}

}  // namespace corrquad
