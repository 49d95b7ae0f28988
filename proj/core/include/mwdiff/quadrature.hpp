#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mwdiff/errors.hpp"

namespace mwdiff::quad {

// Adaptive Gauss-Kronrod (G7,K15) integration on a finite interval.
// Works for double and std::complex<double> integrands. Each call uses its
// own interval stack, so concurrent calls never share state.

namespace detail {

// K15 abscissae on [0,1] and the matching G7 / K15 weights.
inline constexpr double gk_nodes[8] = {
    0.000000000000000000, 0.405845151377397167, 0.741531185599394440,
    0.949107912342758525, 0.207784955007898468, 0.586087235467691130,
    0.864864423359769073, 0.991455371120812639};
inline constexpr double gauss_w[8] = {
    0.417959183673469388, 0.381830050505118945, 0.279705391489276668,
    0.129484966168869693, 0.0, 0.0, 0.0, 0.0};
inline constexpr double kronrod_w[8] = {
    0.209482141084727828, 0.190350578064785410, 0.140653259715525919,
    0.063092092629978553, 0.204432940075298892, 0.169004726639267903,
    0.104790010322250184, 0.022935322010529225};

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

} // namespace detail

template <typename T>
struct Result {
  T value{};
  double error_estimate = 0.0;
  std::size_t intervals = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  std::size_t max_intervals = 4000;
};

// Single G7/K15 panel on [a,b]; error = |G7 - K15| sharpened as in QUADPACK.
template <typename T, typename F>
Result<T> gauss_kronrod_panel(F&& f, double a, double b) {
  using namespace detail;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T f0 = f(mid);
  T g7 = gauss_w[0] * f0;
  T k15 = kronrod_w[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gk_nodes[i];
    T fsum = f(mid + dx) + f(mid - dx);
    g7 += gauss_w[i] * fsum;
    k15 += kronrod_w[i] * fsum;
  }
  g7 *= half;
  k15 *= half;

  double err = magnitude(g7 - k15);
  err = 200.0 * err * std::sqrt(200.0 * err > 1.0 ? 1.0 : 200.0 * err);
  // a non-finite sample must keep the panel at top priority, never look converged
  if (!std::isfinite(err) || !std::isfinite(magnitude(k15)))
    err = std::numeric_limits<double>::max();

  Result<T> r;
  r.value = k15;
  r.error_estimate = err;
  r.intervals = 1;
  r.converged = true;
  return r;
}

template <typename T, typename F>
Result<T> integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result<T> total;
  if (a == b) {
    total.converged = true;
    return total;
  }

  struct Interval {
    double a, b;
    T value;
    double error;
  };

  auto first = gauss_kronrod_panel<T>(f, a, b);
  std::vector<Interval> stack;
  stack.push_back({a, b, first.value, first.error_estimate});

  T sum = first.value;
  double err_sum = first.error_estimate;
  std::size_t n_intervals = 1;

  while (err_sum > opt.abs_tol && err_sum > opt.rel_tol * detail::magnitude(sum)) {
    // split the interval with the largest error estimate
    std::size_t worst = 0;
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (stack[i].error > stack[worst].error) worst = i;

    if (n_intervals + 1 > opt.max_intervals) {
      total.value = sum;
      total.error_estimate = err_sum;
      total.intervals = n_intervals;
      total.converged = false;
      return total;
    }

    Interval iv = stack[worst];
    stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(worst));
    const double m = 0.5 * (iv.a + iv.b);
    auto left = gauss_kronrod_panel<T>(f, iv.a, m);
    auto right = gauss_kronrod_panel<T>(f, m, iv.b);

    sum += left.value + right.value - iv.value;
    err_sum += left.error_estimate + right.error_estimate - iv.error;
    stack.push_back({iv.a, m, left.value, left.error_estimate});
    stack.push_back({m, iv.b, right.value, right.error_estimate});
    ++n_intervals;

    // recompute accumulated error periodically to avoid drift
    if ((n_intervals & 0x3F) == 0) {
      err_sum = 0.0;
      T s{};
      for (const auto& seg : stack) {
        err_sum += seg.error;
        s += seg.value;
      }
      sum = s;
    }
  }

  err_sum = 0.0;
  T s{};
  for (const auto& seg : stack) {
    err_sum += seg.error;
    s += seg.value;
  }
  total.value = s;
  total.error_estimate = err_sum;
  total.intervals = n_intervals;
  total.converged = true;
  return total;
}

// Convenience wrapper that throws numerical_error when the target relative
// accuracy cannot be certified.
template <typename T, typename F>
T integrate_or_throw(F&& f, double a, double b, const Options& opt = {},
                     double max_rel_error = 1e-7, const char* what = "integral") {
  auto r = integrate<T>(f, a, b, opt);
  const double scale = detail::magnitude(r.value);
  if (!r.converged && r.error_estimate > max_rel_error * (scale > 0 ? scale : 1.0) &&
      r.error_estimate > opt.abs_tol) {
    throw numerical_error(std::string("quadrature did not converge for ") + what +
                          ": error estimate " + std::to_string(r.error_estimate) + " over [" +
                          std::to_string(a) + ", " + std::to_string(b) + "] after " +
                          std::to_string(r.intervals) + " intervals");
  }
  return r.value;
}

} // namespace mwdiff::quad
