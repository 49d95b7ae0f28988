#pragma once

#include <complex>
#include <span>

#include "mwdiff/grating.hpp"

namespace mwdiff {

// Attractive atom-surface potential -C3/r_perp^3 acting inside the slit,
// treated in the phase-object (eikonal) approximation along straight
// trajectories through the bar depth. The trapeze bar cross-section makes
// the slit half-width grow with depth z as w(z) = s/2 + z tan(alpha).
struct SurfaceSpec {
  double c3_meV_nm3 = 0.0;
  GratingGeometry geometry;
  double velocity_m_s = 0.0;
  double cutoff_nm = 0.5; // trajectories closer than this to a wall are lost

  void validate() const;
};

// Open (not blocked) part of the slit, centered on x = 0.
struct SlitAperture {
  double lo_nm = 0.0;
  double hi_nm = 0.0;

  bool open() const { return hi_nm > lo_nm; }
  double width_nm() const { return open() ? hi_nm - lo_nm : 0.0; }
};

SlitAperture unblocked_interval(const SurfaceSpec& spec);

// Accumulated phase (radians) of a trajectory at lateral position x inside
// the slit: (1/hbar v) int_0^t [C3/rL^3 + C3/rR^3] dz with the trapeze wall
// distances. Positive (attractive potential advances the phase), linear in
// C3 and in 1/v. Throws domain_error if x is outside the slit walls.
double eikonal_phase(double x_nm, const SurfaceSpec& spec);

// Per-period aperture amplitude tau(K2) = int e^{i K2 x} e^{i phi(x)} dx over
// the unblocked interval. C3 = 0 reduces exactly to the geometric slit
// amplitude; a fully blocked slit gives 0.
std::complex<double> slit_transmission_amplitude(double k2_nm, const SurfaceSpec& spec);

// |tau(K2) x grating function|^2 on the grid plus the order table.
DiffractionPattern atomic_pattern_with_surface(const SurfaceSpec& spec,
                                               std::span<const double> k2_grid);

} // namespace mwdiff
