#include "mwdiff/special.hpp"

#include <cmath>
#include <limits>

#include "mwdiff/errors.hpp"

namespace mwdiff::special {

namespace {

constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// E1(x) = -gamma - ln x + sum_{n>=1} (-1)^{n+1} x^n / (n n!)
double e1_series(double x) {
  double term = 1.0;
  double sum = 0.0;
  for (int n = 1; n <= 60; ++n) {
    term *= -x / n;
    const double add = -term / n;
    sum += add;
    if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
  }
  return -euler_gamma - std::log(x) + sum;
}

// E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))), modified Lentz.
double e1_continued_fraction(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = a * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x) * h;
}

} // namespace

double exp_int_e1(double x) {
  if (x < 0.0) throw domain_error("exp_int_e1: argument must be positive");
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return x <= 1.0 ? e1_series(x) : e1_continued_fraction(x);
}

} // namespace mwdiff::special
