#include "mwdiff/ags.hpp"

#include <algorithm>
#include <random>

#include "mwdiff/errors.hpp"

namespace mwdiff::ags {

namespace {

constexpr double residual_floor = 1e-14;

Matrix inverse_of(const Matrix& a, const char* what) {
  const Eigen::Index n = a.rows();
  Eigen::PartialPivLU<Matrix> lu(a);
  Matrix inv = lu.solve(Matrix::Identity(n, n));
  const double cond_est = a.norm() * inv.norm();
  if (!(cond_est < 1e14))
    throw numerical_error(std::string("ags: ill-conditioned solve for ") + what +
                          " (condition estimate " + std::to_string(cond_est) + ")");
  return inv;
}

} // namespace

void FiniteModel::validate(double hermiticity_tol) const {
  const Eigen::Index n = h0.rows();
  if (h0.cols() != n || v.rows() != n || v.cols() != n || w.rows() != n || w.cols() != n)
    throw domain_error("FiniteModel: H0, V, W must be square and of equal dimension");
  if (n < 1) throw domain_error("FiniteModel: dimension must be >= 1");
  if (z.imag() == 0.0) throw domain_error("FiniteModel: Im(z) must be nonzero");
  auto herm_dev = [](const Matrix& m) {
    const double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() / scale;
  };
  if (herm_dev(h0) > hermiticity_tol || herm_dev(v) > hermiticity_tol ||
      herm_dev(w) > hermiticity_tol)
    throw domain_error("FiniteModel: H0, V, W must be Hermitian");
}

Resolvents resolvents(const FiniteModel& model) {
  model.validate();
  const Eigen::Index n = model.dim();
  const Matrix zi = model.z * Matrix::Identity(n, n);
  Resolvents r;
  r.g0 = inverse_of(zi - model.h0, "G0");
  r.gv = inverse_of(zi - model.h0 - model.v, "GV");
  r.gw = inverse_of(zi - model.h0 - model.w, "GW");
  r.g = inverse_of(zi - model.h0 - model.v - model.w, "G");
  return r;
}

Matrix t_matrix(const Matrix& h0, const Matrix& x, Complex z) {
  const Eigen::Index n = h0.rows();
  const Matrix zi = z * Matrix::Identity(n, n);
  const Matrix gx = inverse_of(zi - h0 - x, "T-matrix resolvent");
  return x + x * gx * x;
}

Matrix u_vv_from_definition(const FiniteModel& model) {
  const auto r = resolvents(model);
  const Eigen::Index n = model.dim();
  const Matrix av = model.z * Matrix::Identity(n, n) - model.h0 - model.v; // GV^-1
  return av * (r.g - r.gv) * av;
}

Matrix u_wv_from_definition(const FiniteModel& model) {
  const auto r = resolvents(model);
  const Eigen::Index n = model.dim();
  const Matrix av = model.z * Matrix::Identity(n, n) - model.h0 - model.v; // GV^-1
  const Matrix aw = model.z * Matrix::Identity(n, n) - model.h0 - model.w; // GW^-1
  return aw * r.g * av;
}

double relative_residual(const Matrix& lhs, const Matrix& rhs) {
  return (lhs - rhs).norm() / std::max(rhs.norm(), residual_floor);
}

bool IdentityReport::all_pass() const {
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityResidual& r) { return r.pass; });
}

double IdentityReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : identities) worst = std::max(worst, r.residual);
  return worst;
}

IdentityReport verify_identities(const FiniteModel& model, double tol) {
  model.validate();
  const auto r = resolvents(model);
  const Eigen::Index n = model.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a0 = model.z * id - model.h0;           // G0^-1
  const Matrix av = a0 - model.v;                      // GV^-1
  const Matrix tw = model.w + model.w * r.gw * model.w;
  const Matrix tv = model.v + model.v * r.gv * model.v;
  const Matrix uvv = av * (r.g - r.gv) * av;
  const Matrix uwv = (a0 - model.w) * r.g * av;

  IdentityReport report;
  report.tolerance = tol;
  auto add = [&](std::string name, const Matrix& lhs, const Matrix& rhs) {
    const double res = relative_residual(lhs, rhs);
    report.identities.push_back({std::move(name), res, res < tol});
  };

  add("uvv-definition", r.gv + r.gv * uvv * r.gv, r.g);
  add("uwv-definition", r.gw * uwv * r.gv, r.g);
  add("uvv-via-w-gw-uwv", model.w * r.gw * uwv, uvv);
  add("tw-g0-reduction", tw * r.g0, model.w * r.gw);
  add("uvv-via-tw-g0-uwv", tw * r.g0 * uwv, uvv);
  add("uwv-coupled", a0 + tv * r.g0 * uvv, uwv);
  add("uvv-decoupled", tw + tw * r.g0 * tv * r.g0 * uvv, uvv);
  add("breakup-consistency", a0 + (id + tv * r.g0) * uvv, a0 * r.g * av);
  return report;
}

TruncationGap truncation_gap(const FiniteModel& model) {
  model.validate();
  const auto r = resolvents(model);
  const Eigen::Index n = model.dim();
  const Matrix av = model.z * Matrix::Identity(n, n) - model.h0 - model.v;
  const Matrix uvv = av * (r.g - r.gv) * av;
  const Matrix tw = model.w + model.w * r.gw * model.w;
  const Matrix tv = model.v + model.v * r.gv * model.v;

  TruncationGap gap;
  const double scale = uvv.norm();
  if (scale <= residual_floor) return gap; // undefined
  gap.defined = true;
  gap.lowest_order = (uvv - tw).norm() / scale;
  gap.first_iteration = (uvv - (tw + tw * r.g0 * tv * r.g0 * tw)).norm() / scale;
  return gap;
}

FiniteModel random_model(std::uint64_t seed, Eigen::Index dim, double im_z_min,
                         double im_z_max) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto hermitian = [&]() {
    Matrix b(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) b(i, j) = Complex{gauss(rng), gauss(rng)};
    return Matrix(0.5 * (b + b.adjoint().eval()));
  };
  FiniteModel m;
  m.h0 = hermitian();
  m.v = hermitian();
  m.w = hermitian();
  std::uniform_real_distribution<double> re_z(-1.0, 1.0);
  std::uniform_real_distribution<double> im_z(im_z_min, im_z_max);
  m.z = Complex{re_z(rng), im_z(rng)};
  return m;
}

} // namespace mwdiff::ags
