#include "mwdiff/grating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mwdiff/errors.hpp"

namespace mwdiff {

namespace {
constexpr double pi = std::numbers::pi;
}

void GratingGeometry::validate() const {
  if (!(period_nm > 0.0)) throw domain_error("GratingGeometry: period must be > 0");
  if (!(slit_width_nm > 0.0 && slit_width_nm < period_nm))
    throw domain_error("GratingGeometry: slit width must satisfy 0 < s < d");
  if (bar_count < 1) throw domain_error("GratingGeometry: bar count must be >= 1");
  if (depth_nm < 0.0) throw domain_error("GratingGeometry: depth must be >= 0");
  if (!(wedge_angle_deg >= 0.0 && wedge_angle_deg < 45.0))
    throw domain_error("GratingGeometry: wedge angle must be in [0, 45) deg");
}

double grating_function(double k2_nm, double period_nm, int bar_count) {
  if (!(period_nm > 0.0)) throw domain_error("grating_function: period must be > 0");
  if (bar_count < 1) throw domain_error("grating_function: bar count must be >= 1");
  const long long n = bar_count;

  // sin(N X)/sin(X) with X = m pi + delta reduces exactly to
  // (-1)^(m (N-1)) sin(N delta)/sin(delta), stable near every peak.
  const double x = 0.5 * k2_nm * period_nm;
  const long long m = std::llround(x / pi);
  const double delta = x - static_cast<double>(m) * pi;
  const double sign = ((m % 2 != 0) && (n % 2 == 0)) ? -1.0 : 1.0;
  if (std::fabs(delta) < 1e-14) return sign * static_cast<double>(n);
  return sign * std::sin(static_cast<double>(n) * delta) / std::sin(delta);
}

ComplexAmplitude coherent_amplitude(double k2_nm, const GratingGeometry& geometry,
                                    const BeamState& beam, const DimerModel* model,
                                    bool normalized) {
  geometry.validate();
  const BarSpec bar = geometry.bar();
  const ComplexAmplitude single =
      model ? dimer_bar_amplitude(k2_nm, bar, beam, *model, normalized)
            : point_bar_amplitude(k2_nm, bar, beam, normalized);
  const double gf = grating_function(k2_nm, geometry.period_nm, geometry.bar_count);
  return {single.value * gf, normalized};
}

DiffractionPattern pattern(const GratingGeometry& geometry, const BeamState& beam,
                           const DimerModel* model, std::span<const double> k2_grid,
                           bool normalized) {
  geometry.validate();
  if (k2_grid.empty()) throw domain_error("pattern: empty K2 grid");
  if (!std::is_sorted(k2_grid.begin(), k2_grid.end()))
    throw domain_error("pattern: K2 grid must be sorted");

  DiffractionPattern pat;
  pat.k2_grid.assign(k2_grid.begin(), k2_grid.end());
  pat.intensity.reserve(k2_grid.size());
  for (double k2 : k2_grid)
    pat.intensity.push_back(coherent_amplitude(k2, geometry, beam, model, normalized).intensity());

  double k2_abs_max = 0.0;
  for (double k2 : k2_grid) k2_abs_max = std::max(k2_abs_max, std::fabs(k2));
  const int n_max =
      static_cast<int>(std::floor(k2_abs_max * geometry.period_nm / (2.0 * pi) + 1e-9));

  const BarSpec bar = geometry.bar();
  const double n_sq = static_cast<double>(geometry.bar_count) *
                      static_cast<double>(geometry.bar_count);
  for (int n = 0; n <= n_max; ++n) {
    const double k2n = 2.0 * pi * n / geometry.period_nm;
    const ComplexAmplitude single =
        model ? dimer_bar_amplitude(k2n, bar, beam, *model, normalized)
              : point_bar_amplitude(k2n, bar, beam, normalized);
    pat.orders.push_back({n, k2n, n_sq * single.intensity()});
  }
  return pat;
}

std::vector<PeakRatio> relative_peak_heights(const DiffractionPattern& pat,
                                             int reference_order) {
  const auto ref = std::find_if(pat.orders.begin(), pat.orders.end(),
                                [&](const DiffractionOrder& o) { return o.n == reference_order; });
  if (ref == pat.orders.end())
    throw domain_error("relative_peak_heights: reference order not in pattern");
  if (ref->intensity == 0.0)
    throw domain_error("relative_peak_heights: reference order has zero intensity");

  std::vector<PeakRatio> out;
  out.reserve(pat.orders.size());
  for (const auto& o : pat.orders)
    out.push_back({o.n, o.k2_nm, o.intensity, o.intensity / ref->intensity});
  return out;
}

} // namespace mwdiff
