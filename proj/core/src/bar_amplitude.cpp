#include "mwdiff/bar_amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "mwdiff/errors.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/special.hpp"
#include "mwdiff/units.hpp"

namespace mwdiff {

namespace {

constexpr double two_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
constexpr std::complex<double> imag_unit{0.0, 1.0};

// int_0^a g(x) w(x) dx where w is a slowly varying weight, with the
// integrable log endpoint of the analytic marginal split off analytically:
// int_0^eps kappa E1(2 kappa x) dx = kappa [eps E1(2 kappa eps)] + (1 - e^{-2 kappa eps})/2.
double marginal_weighted_integral(const DimerModel& model, double a,
                                  const std::function<double(double)>& weight) {
  double lo = 0.0;
  double sliver = 0.0;
  if (model.is_analytic()) {
    const double kappa = model.kappa();
    const double eps = DimerModel::transverse_floor_nm;
    sliver = weight(0.0) * (kappa * eps * special::exp_int_e1(2.0 * kappa * eps) +
                            0.5 * (1.0 - std::exp(-2.0 * kappa * eps)));
    lo = eps;
  }
  const double hi = std::min(a, model.max_radius());
  if (hi <= lo) return sliver;
  const double bulk = quad::integrate_or_throw<double>(
      [&](double x) { return model.transverse_density(x) * weight(x); }, lo, hi,
      {1e-12, 1e-9, 4000}, 1e-7, "dimer bar amplitude marginal term");
  return sliver + bulk;
}

} // namespace

double BeamState::total_wavenumber_nm() const {
  validate();
  return units::wavenumber_from_velocity(mass_amu, velocity_m_s);
}

void BeamState::validate() const {
  if (!(mass_amu > 0.0)) throw domain_error("BeamState: mass must be > 0");
  if (!(velocity_m_s > 0.0)) throw domain_error("BeamState: velocity must be > 0");
}

void BarSpec::validate() const {
  if (!(width_nm > 0.0)) throw domain_error("BarSpec: width must be > 0");
}

double amplitude_scale(const BeamState& beam, bool normalized) {
  if (normalized) return 1.0;
  beam.validate();
  return 2.0 * beam.velocity_m_s / two_pi_sq;
}

ComplexAmplitude point_bar_amplitude(double k2_nm, const BarSpec& bar,
                                     const BeamState& beam, bool normalized) {
  bar.validate();
  const double scale = amplitude_scale(beam, normalized);
  const double a = bar.width_nm;
  const double envelope = k2_nm == 0.0 ? 0.5 * a : std::sin(0.5 * k2_nm * a) / k2_nm;
  return {-imag_unit * scale * envelope, normalized};
}

ComplexAmplitude dimer_bar_amplitude(double k2_nm, const BarSpec& bar,
                                     const BeamState& beam, const DimerModel& model,
                                     bool normalized) {
  bar.validate();
  const double scale = amplitude_scale(beam, normalized);
  const double a = bar.width_nm;
  const double k2 = k2_nm;

  double term1; // 2 F(K2/2) sin(K2 a/2)/K2, real amplitude carried by -i
  double term2; // (2/K2) int_0^a g(x) sin[K2 (a - x)/2] dx, carried by +i
  if (k2 == 0.0) {
    term1 = a * model.form_factor(0.0);
    term2 = marginal_weighted_integral(model, a, [&](double x) { return a - x; });
  } else {
    term1 = 2.0 * model.form_factor(0.5 * k2) * std::sin(0.5 * k2 * a) / k2;
    term2 = (2.0 / k2) * marginal_weighted_integral(model, a, [&](double x) {
              return std::sin(0.5 * k2 * (a - x));
            });
  }
  return {imag_unit * scale * (term2 - term1), normalized};
}

EffectiveWidthFit fit_effective_width(const DimerModel& model, const BarSpec& bar,
                                      const BeamState& beam, double k2_max_nm,
                                      const EffectiveWidthOptions& opt) {
  bar.validate();
  if (!(k2_max_nm > 0.0)) throw domain_error("fit_effective_width: k2_max must be > 0");
  if (opt.k2_samples < 8) throw domain_error("fit_effective_width: need >= 8 samples");
  if (!(opt.delta_min_nm < opt.delta_max_nm))
    throw domain_error("fit_effective_width: empty search interval");
  if (bar.width_nm + opt.delta_min_nm <= 0.0)
    throw domain_error("fit_effective_width: delta_min must keep the widened bar positive");

  const std::size_t n = opt.k2_samples;
  const double dk = k2_max_nm / static_cast<double>(n - 1);
  std::vector<double> k2(n), dimer_i2(n);
  for (std::size_t i = 0; i < n; ++i) {
    k2[i] = static_cast<double>(i) * dk;
    dimer_i2[i] = dimer_bar_amplitude(k2[i], bar, beam, model, true).intensity();
  }

  auto objective = [&](double delta) {
    const BarSpec widened{bar.width_nm + delta};
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double pi2 = point_bar_amplitude(k2[i], widened, beam, true).intensity();
      const double diff = dimer_i2[i] - pi2;
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0; // trapezoid
      sum += w * diff * diff;
    }
    return sum * dk;
  };

  // coarse scan, then golden-section in the bracket around the best cell
  const int coarse = 64;
  double best = opt.delta_min_nm, best_val = objective(best);
  for (int i = 1; i <= coarse; ++i) {
    const double d = opt.delta_min_nm +
                     (opt.delta_max_nm - opt.delta_min_nm) * i / static_cast<double>(coarse);
    const double v = objective(d);
    if (v < best_val) {
      best = d;
      best_val = v;
    }
  }
  const double cell = (opt.delta_max_nm - opt.delta_min_nm) / coarse;
  double lo = std::max(opt.delta_min_nm, best - cell);
  double hi = std::min(opt.delta_max_nm, best + cell);

  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  while (hi - lo > opt.delta_tol_nm) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double delta = 0.5 * (lo + hi);

  const double margin = 2.0 * opt.delta_tol_nm + 1e-12;
  if (delta - opt.delta_min_nm < margin || opt.delta_max_nm - delta < margin)
    throw numerical_error(
        "fit_effective_width: minimizer hit the search-interval boundary at delta = " +
        std::to_string(delta) + " nm; widen [delta_min, delta_max]");

  const double first_zero = 2.0 * std::numbers::pi / (bar.width_nm + delta);
  if (k2_max_nm >= first_zero)
    throw domain_error(
        "fit_effective_width: k2_max reaches the first diffraction zero of the widened bar");

  EffectiveWidthFit fit;
  fit.delta_nm = delta;
  fit.residual = objective(delta);
  fit.k2_max_nm = k2_max_nm;
  fit.k2_samples = n;
  return fit;
}

} // namespace mwdiff
