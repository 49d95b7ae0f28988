#pragma once

#include <span>
#include <vector>

#include "mwdiff/bar_amplitude.hpp"

namespace mwdiff {

// Transmission grating: period d, slit width s, N bars; depth and wedge
// angle describe the bar cross-section (used by the surface module).
struct GratingGeometry {
  double period_nm = 0.0;      // d
  double slit_width_nm = 0.0;  // s
  int bar_count = 1;           // N
  double depth_nm = 0.0;       // t
  double wedge_angle_deg = 0.0; // alpha

  double bar_width_nm() const { return period_nm - slit_width_nm; }
  BarSpec bar() const { return {bar_width_nm()}; }
  void validate() const;
};

// N-slit interference factor sin(N K2 d / 2) / sin(K2 d / 2); the removable
// singularities at K2 d = 2 pi n evaluate to +-N.
double grating_function(double k2_nm, double period_nm, int bar_count);

// Diffraction order: peak at K2_n = 2 pi n / d with the analytic-limit
// intensity N^2 |t_bar(K2_n)|^2.
struct DiffractionOrder {
  int n = 0;
  double k2_nm = 0.0;
  double intensity = 0.0;
};

struct DiffractionPattern {
  std::vector<double> k2_grid;
  std::vector<double> intensity; // |t_coh|^2, relative units
  std::vector<DiffractionOrder> orders;
};

// Coherent N-bar amplitude: single-bar amplitude times the grating function.
// model == nullptr selects the point particle.
ComplexAmplitude coherent_amplitude(double k2_nm, const GratingGeometry& geometry,
                                    const BeamState& beam, const DimerModel* model,
                                    bool normalized = false);

// |t_coh|^2 sampled on the grid plus the order table up to
// n_max = floor(K2_max d / 2 pi).
DiffractionPattern pattern(const GratingGeometry& geometry, const BeamState& beam,
                           const DimerModel* model, std::span<const double> k2_grid,
                           bool normalized = false);

struct PeakRatio {
  int n = 0;
  double k2_nm = 0.0;
  double intensity = 0.0;
  double ratio = 0.0; // I_n / I_reference
};

// Order intensities relative to the given reference order.
std::vector<PeakRatio> relative_peak_heights(const DiffractionPattern& pat,
                                             int reference_order = 1);

} // namespace mwdiff
