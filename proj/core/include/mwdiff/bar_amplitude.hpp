#pragma once

#include <complex>
#include <cstddef>

#include "mwdiff/wavefunction.hpp"

namespace mwdiff {

// Beam of total mass M moving at v = P/M. hbar = 1 internally, so the
// total momentum is the wavenumber M v / hbar in nm^-1.
struct BeamState {
  double mass_amu = 0.0;
  double velocity_m_s = 0.0;

  double total_wavenumber_nm() const;
  void validate() const;
};

// Single grating bar of width a = d - s.
struct BarSpec {
  double width_nm = 0.0;
  void validate() const;
};

// Transition amplitude sample. When `normalized` the overall 2v/(2pi)^2
// factor is divided out; only |value|^2 ratios are physically meaningful
// either way (no absolute flux normalization).
struct ComplexAmplitude {
  std::complex<double> value{};
  bool normalized = false;

  double intensity() const { return std::norm(value); }
};

// Overall amplitude prefactor 2v/(2pi)^2 (or 1 in normalized mode).
double amplitude_scale(const BeamState& beam, bool normalized);

// Single-bar amplitude of a point particle:
//   -i * scale * sin(K2 a / 2) / K2,   K2 = 0 -> -i * scale * a/2.
ComplexAmplitude point_bar_amplitude(double k2_nm, const BarSpec& bar,
                                     const BeamState& beam, bool normalized = false);

// Single-bar amplitude of the dimer. Two contributions:
//   term1 = point amplitude x 2 F(K2/2)       (elastic, form-factor weighted)
//   term2 = +i * scale * (2/K2) int_0^a g(x2) sin[K2 (a - x2)/2] dx2
// where F is the form factor and g the lateral marginal of the internal
// density. Contracts to the point amplitude as the density shrinks.
ComplexAmplitude dimer_bar_amplitude(double k2_nm, const BarSpec& bar,
                                     const BeamState& beam, const DimerModel& model,
                                     bool normalized = false);

struct EffectiveWidthOptions {
  double delta_min_nm = -5.0;
  double delta_max_nm = 10.0;
  std::size_t k2_samples = 241;
  double delta_tol_nm = 1e-4;
};

struct EffectiveWidthFit {
  double delta_nm = 0.0; // width increment: dimer bar "acts like" a + delta
  double residual = 0.0; // objective value at the minimum
  double k2_max_nm = 0.0;
  std::size_t k2_samples = 0;
};

// Least-squares match of the dimer single-bar intensity to a point particle
// with enlarged bar width a + delta over K2 in [0, k2_max]. Minimizes
//   int_0^k2max ( |t_mol(K2)|^2 - |t_point,a+delta(K2)|^2 )^2 dK2
// by coarse scan plus golden-section refinement.
EffectiveWidthFit fit_effective_width(const DimerModel& model, const BarSpec& bar,
                                      const BeamState& beam, double k2_max_nm,
                                      const EffectiveWidthOptions& opt = {});

} // namespace mwdiff
