#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mwdiff::ags {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Finite-dimensional stand-in for the scattering operators: free Hamiltonian
// H0, binding potential V, external potential W (all Hermitian), and a
// spectral parameter z off the real axis so every resolvent exists.
struct FiniteModel {
  Matrix h0;
  Matrix v;
  Matrix w;
  Complex z;

  Eigen::Index dim() const { return h0.rows(); }
  void validate(double hermiticity_tol = 1e-12) const;
};

struct Resolvents {
  Matrix g0; // (z - H0)^-1
  Matrix g;  // (z - H0 - V - W)^-1
  Matrix gv; // (z - H0 - V)^-1
  Matrix gw; // (z - H0 - W)^-1
};

// Dense solves; throws numerical_error when a resolvent is ill-conditioned
// (condition estimate above ~1e14).
Resolvents resolvents(const FiniteModel& model);

// T_X(z) = X + X (z - H0 - X)^-1 X. Also satisfies T_X = X + X G0 T_X.
Matrix t_matrix(const Matrix& h0, const Matrix& x, Complex z);

// U_VV from its defining resolvent split G = G_V + G_V U_VV G_V:
//   U_VV = (z - H0 - V) (G - G_V) (z - H0 - V).
Matrix u_vv_from_definition(const FiniteModel& model);

// U_WV from G = G_W U_WV G_V:
//   U_WV = (z - H0 - W) G (z - H0 - V).
Matrix u_wv_from_definition(const FiniteModel& model);

// Relative Frobenius residual ||A - B|| / max(||B||, floor).
double relative_residual(const Matrix& lhs, const Matrix& rhs);

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityResidual> identities;
  double tolerance = 0.0;

  bool all_pass() const;
  double max_residual() const;
};

// Checks the full chain of transition-operator identities on the model:
//   uvv-definition       G == G_V + G_V U_VV G_V
//   uwv-definition       G == G_W U_WV G_V
//   uvv-via-w-gw-uwv     U_VV == W G_W U_WV
//   tw-g0-reduction      T_W G0 == W G_W
//   uvv-via-tw-g0-uwv    U_VV == T_W G0 U_WV
//   uwv-coupled          U_WV == G0^-1 + T_V G0 U_VV
//   uvv-decoupled        U_VV == T_W + T_W G0 T_V G0 U_VV
//   breakup-consistency  G0^-1 + (1 + T_V G0) U_VV == G0^-1 G G_V^-1
IdentityReport verify_identities(const FiniteModel& model, double tol = 1e-10);

// Size of the lowest-order truncation U_VV ~= T_W and of the first iterate
// U_VV ~= T_W + T_W G0 T_V G0 T_W, both relative to ||U_VV||.
struct TruncationGap {
  double lowest_order = 0.0;
  double first_iteration = 0.0;
  bool defined = false; // false when ||U_VV|| == 0
};

TruncationGap truncation_gap(const FiniteModel& model);

// Reproducible Gaussian Hermitian model: entries of H0, V, W are
// (N(0,1) + i N(0,1))/2 symmetrized, Re z uniform in [-1, 1], Im z uniform
// in [im_z_min, im_z_max].
FiniteModel random_model(std::uint64_t seed, Eigen::Index dim, double im_z_min = 0.1,
                         double im_z_max = 2.0);

} // namespace mwdiff::ags
