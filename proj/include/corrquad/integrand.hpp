#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "corrquad/errors.hpp"

namespace corrquad {

/// Scalar function of one variable together with derivatives up to some
/// order. Values are checked for finiteness on every call.
class Integrand {
 public:
  using ValueFn = std::function<double(double)>;
  /// (order k >= 1, x) -> f^(k)(x)
  using DerivativeFn = std::function<double(int, double)>;

  static constexpr int kMaxSupportedOrder = 6;

  explicit Integrand(ValueFn f) : value_(std::move(f)), max_order_(0) {}

  Integrand(ValueFn f, DerivativeFn df, int max_order)
      : value_(std::move(f)), derivative_(std::move(df)), max_order_(max_order) {
    if (max_order < 0 || max_order > kMaxSupportedOrder)
      throw InvalidArgument("derivative order must lie in 0..6");
    if (max_order > 0 && !derivative_)
      throw InvalidArgument("derivative callback missing");
  }

  /// fns[0] is f, fns[k] is the k-th derivative.
  static Integrand from_derivatives(std::vector<ValueFn> fns) {
    if (fns.empty()) throw InvalidArgument("at least f itself is required");
    const int order = static_cast<int>(fns.size()) - 1;
    ValueFn f = fns.front();
    if (order == 0) return Integrand(std::move(f));
    auto table = std::make_shared<std::vector<ValueFn>>(std::move(fns));
    return Integrand(
        std::move(f),
        [table](int k, double x) { return (*table)[static_cast<std::size_t>(k)](x); },
        order);
  }

  double operator()(double x) const { return checked(value_(x), 0, x); }

  double derivative(int k, double x) const {
    if (k == 0) return (*this)(x);
    if (k < 0 || k > max_order_) throw CapabilityError(k, max_order_);
    return checked(derivative_(k, x), k, x);
  }

  int max_order() const noexcept { return max_order_; }
  bool has_order(int k) const noexcept { return k <= max_order_; }

  /// Same integrand with f' supplied by `df`; higher orders unchanged.
  Integrand with_first_derivative(ValueFn df) const {
    const int order = max_order_ < 1 ? 1 : max_order_;
    return Integrand(
        value_,
        [base = derivative_, df = std::move(df)](int k, double x) {
          return k == 1 ? df(x) : base(k, x);
        },
        order);
  }

 private:
  static double checked(double v, int k, double x) {
    if (!std::isfinite(v)) {
      throw EvaluationError(k == 0 ? std::string("non-finite function value")
                                   : "non-finite derivative of order " +
                                         std::to_string(k),
                            x);
    }
    return v;
  }

  ValueFn value_;
  DerivativeFn derivative_;
  int max_order_;
};

}  // namespace corrquad
