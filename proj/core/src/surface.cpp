#include "mwdiff/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwdiff/errors.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/units.hpp"

namespace mwdiff {

namespace {

constexpr double pi = std::numbers::pi;

// meV nm -> J m, divided by hbar v: converts C3 * int dz/r^3 to radians.
double phase_conversion(double velocity_m_s) {
  const double meV_nm_in_J_m = units::constants::meV_J * 1e-9;
  return meV_nm_in_J_m / (units::constants::hbar_J_s * velocity_m_s);
}

// int_0^t dz / (u + z tan(alpha))^3 for entrance wall distance u > 0.
double wall_depth_integral(double u, double depth, double tan_alpha) {
  if (tan_alpha < 1e-12) return depth / (u * u * u);
  const double u_exit = u + depth * tan_alpha;
  return (1.0 / (u * u) - 1.0 / (u_exit * u_exit)) / (2.0 * tan_alpha);
}

} // namespace

void SurfaceSpec::validate() const {
  geometry.validate();
  if (c3_meV_nm3 < 0.0) throw domain_error("SurfaceSpec: C3 must be >= 0");
  if (!(velocity_m_s > 0.0)) throw domain_error("SurfaceSpec: velocity must be > 0");
  if (!(cutoff_nm > 0.0)) throw domain_error("SurfaceSpec: cutoff distance must be > 0");
}

SlitAperture unblocked_interval(const SurfaceSpec& spec) {
  spec.validate();
  // Narrowest wall separation is at the entrance (half-width grows with z),
  // so blocking is decided there.
  const double half = 0.5 * spec.geometry.slit_width_nm - spec.cutoff_nm;
  if (half <= 0.0) return {0.0, 0.0};
  return {-half, half};
}

double eikonal_phase(double x_nm, const SurfaceSpec& spec) {
  spec.validate();
  const double w = 0.5 * spec.geometry.slit_width_nm;
  if (!(std::fabs(x_nm) < w))
    throw domain_error("eikonal_phase: position outside the slit opening");
  if (spec.c3_meV_nm3 == 0.0) return 0.0;

  const double tan_alpha = std::tan(spec.geometry.wedge_angle_deg * pi / 180.0);
  const double depth_term = wall_depth_integral(w + x_nm, spec.geometry.depth_nm, tan_alpha) +
                            wall_depth_integral(w - x_nm, spec.geometry.depth_nm, tan_alpha);
  return phase_conversion(spec.velocity_m_s) * spec.c3_meV_nm3 * depth_term;
}

std::complex<double> slit_transmission_amplitude(double k2_nm, const SurfaceSpec& spec) {
  const SlitAperture ap = unblocked_interval(spec);
  if (!ap.open()) return {0.0, 0.0};

  if (spec.c3_meV_nm3 == 0.0) {
    // geometric aperture, exact
    if (k2_nm == 0.0) return {ap.width_nm(), 0.0};
    const std::complex<double> i{0.0, 1.0};
    return (std::exp(i * (k2_nm * ap.hi_nm)) - std::exp(i * (k2_nm * ap.lo_nm))) /
           (i * k2_nm);
  }

  return quad::integrate_or_throw<std::complex<double>>(
      [&](double x) {
        const double arg = k2_nm * x + eikonal_phase(x, spec);
        return std::complex<double>{std::cos(arg), std::sin(arg)};
      },
      ap.lo_nm, ap.hi_nm, {1e-10, 1e-10, 8000}, 1e-6, "slit transmission amplitude");
}

DiffractionPattern atomic_pattern_with_surface(const SurfaceSpec& spec,
                                               std::span<const double> k2_grid) {
  spec.validate();
  if (k2_grid.empty()) throw domain_error("atomic_pattern_with_surface: empty K2 grid");
  if (!std::is_sorted(k2_grid.begin(), k2_grid.end()))
    throw domain_error("atomic_pattern_with_surface: K2 grid must be sorted");

  const GratingGeometry& g = spec.geometry;
  DiffractionPattern pat;
  pat.k2_grid.assign(k2_grid.begin(), k2_grid.end());
  pat.intensity.reserve(k2_grid.size());
  for (double k2 : k2_grid) {
    const auto tau = slit_transmission_amplitude(k2, spec);
    const double gf = grating_function(k2, g.period_nm, g.bar_count);
    pat.intensity.push_back(std::norm(tau * gf));
  }

  double k2_abs_max = 0.0;
  for (double k2 : k2_grid) k2_abs_max = std::max(k2_abs_max, std::fabs(k2));
  const int n_max = static_cast<int>(std::floor(k2_abs_max * g.period_nm / (2.0 * pi) + 1e-9));
  const double n_sq = static_cast<double>(g.bar_count) * static_cast<double>(g.bar_count);
  for (int n = 0; n <= n_max; ++n) {
    const double k2n = 2.0 * pi * n / g.period_nm;
    pat.orders.push_back({n, k2n, n_sq * std::norm(slit_transmission_amplitude(k2n, spec))});
  }
  return pat;
}

} // namespace mwdiff
