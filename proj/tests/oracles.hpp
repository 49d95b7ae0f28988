#pragma once

// Brute-force reference implementations used only by the test suite. They
// evaluate the defining integrals directly from the pointwise density (no
// form-factor or marginal shortcuts) so the fast paths can be checked
// against them.

#include <complex>
#include <cstdint>

#include "mwdiff/bar_amplitude.hpp"
#include "mwdiff/wavefunction.hpp"

namespace mwdiff::oracle {

// rho(|x|) addressed through explicit Cartesian components.
double density_xyz(const DimerModel& model, double x1, double x2, double x3);

// F(q) = int d^3x e^{i q x_l} rho(x) by nested quadrature in cylindrical
// coordinates about the chosen lateral axis (0, 1 or 2).
double form_factor(const DimerModel& model, double q_nm, int lateral_axis = 1);

// Lateral marginal h(xl) = int rho d(two transverse coords) by direct
// quadrature of the density. Diverges (integrably) at xl = 0; call with
// xl != 0.
double transverse_density(const DimerModel& model, double xl_nm, int lateral_axis = 1);

// Single-bar dimer amplitude with both integrals evaluated brute-force.
std::complex<double> dimer_bar_amplitude(double k2_nm, const BarSpec& bar,
                                         const BeamState& beam, const DimerModel& model,
                                         bool normalized = false, int lateral_axis = 1);

// <|x_l|> by direct sampling of the halo density (analytic model only).
double mean_abs_lateral_mc(const DimerModel& model, std::size_t samples,
                           std::uint64_t seed);

// |sum_{j=0}^{N-1} e^{i K2 j d}|, the interference factor summed explicitly.
double grating_sum_magnitude(double k2_nm, double period_nm, int bar_count);

} // namespace mwdiff::oracle
