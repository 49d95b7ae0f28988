#pragma once

#include <string>
#include <vector>

namespace mwdiff {

// Derived size measures of the internal probability density.
struct SizeMeasures {
  double mean_r_nm = 0.0;        // <r>
  double mean_abs_x2_nm = 0.0;   // <|x2|>, lateral first moment
  double diameter_estimate_nm = 0.0; // 2 <r>
};

// Isotropic internal probability density rho(r) = |phi(x)|^2 of a weakly
// bound dimer, normalized to int rho d^3x = 1.
//
// Two representations:
//   AnalyticExponential  rho(r) = (kappa/2pi) e^{-2 kappa r} / r^2
//                        (universal halo tail; exactly normalized)
//   TabulatedRadial      linear interpolation of (r_i, rho_i) samples,
//                        rho = 0 beyond the last grid point
class DimerModel {
public:
  enum class Kind { AnalyticExponential, TabulatedRadial };

  // Halo model with decay constant kappa (nm^-1).
  static DimerModel exponential(double kappa_nm, double binding_energy_ueV = 0.0,
                                std::string label = "exponential");

  // Halo model with kappa chosen so that <|x2|> = target (kappa = 1/(4 target)).
  static DimerModel calibrated_to_x2(double target_x2_nm);

  // Tabulated isotropic density; grid must be strictly increasing with r > 0,
  // density nonnegative, and normalized to |int rho d^3x - 1| <= norm_tol.
  static DimerModel tabulated(std::vector<double> r_nm, std::vector<double> rho_nm3,
                              double binding_energy_ueV = 0.0,
                              std::string label = "tabulated", double norm_tol = 1e-6);

  // Two-column text file: r [nm], rho [nm^-3]; '#' starts a comment line.
  static DimerModel tabulated_from_file(const std::string& path,
                                        double binding_energy_ueV = 0.0,
                                        double norm_tol = 1e-6);

  Kind kind() const { return kind_; }
  bool is_analytic() const { return kind_ == Kind::AnalyticExponential; }
  double kappa() const; // AnalyticExponential only
  double binding_energy_ueV() const { return binding_energy_ueV_; }
  const std::string& label() const { return label_; }

  // rho(r) in nm^-3. The analytic form diverges integrably at r = 0.
  double density(double r_nm) const;

  // int rho d^3x: exactly 1 for the analytic model, the piecewise integral of
  // the interpolant for tabulated data.
  double normalization() const;

  // Radius beyond which the density is numerically negligible (quadrature bound).
  double max_radius() const;

  // F(q) = int e^{i q.x} rho(x) d^3x. Real and even, F(0) = 1, |F| <= 1.
  double form_factor(double q_nm) const;

  // Lateral marginal g(x2) = int rho dx1 dx3, even, int g dx2 = 1.
  // The analytic model has an integrable log singularity at x2 = 0; arguments
  // below the documented floor are evaluated at the floor.
  double transverse_density(double x2_nm) const;

  SizeMeasures size_measures() const;

  static constexpr double transverse_floor_nm = 1e-6;

private:
  DimerModel() = default;

  double tabulated_radial_moment(int power) const; // int 4 pi r^(2+power) rho dr
  double tabulated_tail_integral(double r_nm) const; // 2 pi int_r^inf s rho(s) ds

  Kind kind_ = Kind::AnalyticExponential;
  double kappa_nm_ = 0.0;
  double binding_energy_ueV_ = 0.0;
  std::string label_;
  std::vector<double> grid_r_;
  std::vector<double> grid_rho_;
  std::vector<double> grid_tail_; // 2 pi int_{r_i}^{r_N} s rho(s) ds, cached
  double norm_ = 1.0;
};

} // namespace mwdiff
