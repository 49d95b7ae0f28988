#include "mwdiff/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "mwdiff/errors.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/special.hpp"

namespace mwdiff {

namespace {

constexpr double pi = std::numbers::pi;

// int r^k (A + B r) dr over [lo, hi]
double segment_poly_integral(int k, double A, double B, double lo, double hi) {
  auto anti = [&](double r) {
    return A * std::pow(r, k + 1) / (k + 1) + B * std::pow(r, k + 2) / (k + 2);
  };
  return anti(hi) - anti(lo);
}

// 5-point Gauss-Legendre on [lo, hi]
template <typename F>
double gl5(F&& f, double lo, double hi) {
  static constexpr double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
  static constexpr double ws[5] = {0.2369268850561891, 0.4786286704993665,
                                   0.5688888888888889, 0.4786286704993665,
                                   0.2369268850561891};
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += ws[i] * f(mid + half * xs[i]);
  return half * sum;
}

} // namespace

DimerModel DimerModel::exponential(double kappa_nm, double binding_energy_ueV,
                                   std::string label) {
  if (!(kappa_nm > 0.0)) throw domain_error("DimerModel::exponential: kappa must be > 0");
  DimerModel m;
  m.kind_ = Kind::AnalyticExponential;
  m.kappa_nm_ = kappa_nm;
  m.binding_energy_ueV_ = binding_energy_ueV;
  m.label_ = std::move(label);
  return m;
}

DimerModel DimerModel::calibrated_to_x2(double target_x2_nm) {
  if (!(target_x2_nm > 0.0))
    throw domain_error("DimerModel::calibrated_to_x2: target must be > 0");
  // <|x2|> = 1/(4 kappa) for the halo form
  return exponential(1.0 / (4.0 * target_x2_nm), 0.0, "calibrated");
}

DimerModel DimerModel::tabulated(std::vector<double> r_nm, std::vector<double> rho_nm3,
                                 double binding_energy_ueV, std::string label,
                                 double norm_tol) {
  if (r_nm.size() != rho_nm3.size())
    throw validation_error("DimerModel::tabulated: grid size mismatch");
  if (r_nm.size() < 2) throw validation_error("DimerModel::tabulated: need >= 2 points");
  if (!(r_nm.front() > 0.0))
    throw validation_error("DimerModel::tabulated: grid must start at r > 0");
  for (std::size_t i = 0; i + 1 < r_nm.size(); ++i)
    if (!(r_nm[i] < r_nm[i + 1]))
      throw validation_error("DimerModel::tabulated: grid must be strictly increasing");
  for (double rho : rho_nm3)
    if (!(rho >= 0.0) || !std::isfinite(rho))
      throw validation_error("DimerModel::tabulated: density must be finite and >= 0");

  DimerModel m;
  m.kind_ = Kind::TabulatedRadial;
  m.binding_energy_ueV_ = binding_energy_ueV;
  m.label_ = std::move(label);
  m.grid_r_ = std::move(r_nm);
  m.grid_rho_ = std::move(rho_nm3);

  m.norm_ = m.tabulated_radial_moment(0);
  if (std::fabs(m.norm_ - 1.0) > norm_tol) {
    std::ostringstream msg;
    msg << "DimerModel::tabulated: density not normalized, int rho d3x = " << m.norm_;
    throw validation_error(msg.str());
  }

  // suffix integrals of 2 pi r rho for the lateral marginal
  const std::size_t n = m.grid_r_.size();
  m.grid_tail_.assign(n, 0.0);
  for (std::size_t i = n - 1; i-- > 0;) {
    const double h = m.grid_r_[i + 1] - m.grid_r_[i];
    const double slope = (m.grid_rho_[i + 1] - m.grid_rho_[i]) / h;
    const double A = m.grid_rho_[i] - slope * m.grid_r_[i];
    m.grid_tail_[i] = m.grid_tail_[i + 1] +
                      2.0 * pi * segment_poly_integral(1, A, slope, m.grid_r_[i], m.grid_r_[i + 1]);
  }
  return m;
}

DimerModel DimerModel::tabulated_from_file(const std::string& path,
                                           double binding_energy_ueV, double norm_tol) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open density table: " + path);
  std::vector<double> r, rho;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double rv, dv;
    if (!(ss >> rv)) continue; // blank or comment-only line
    if (!(ss >> dv)) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": expected two columns (r rho)";
      throw validation_error(msg.str());
    }
    r.push_back(rv);
    rho.push_back(dv);
  }
  return tabulated(std::move(r), std::move(rho), binding_energy_ueV,
                   "tabulated:" + path, norm_tol);
}

double DimerModel::kappa() const {
  if (kind_ != Kind::AnalyticExponential)
    throw domain_error("DimerModel::kappa: only defined for the analytic model");
  return kappa_nm_;
}

double DimerModel::density(double r_nm) const {
  if (r_nm < 0.0) throw domain_error("DimerModel::density: r must be >= 0");
  if (kind_ == Kind::AnalyticExponential) {
    if (r_nm == 0.0) return std::numeric_limits<double>::infinity();
    return kappa_nm_ / (2.0 * pi) * std::exp(-2.0 * kappa_nm_ * r_nm) / (r_nm * r_nm);
  }
  if (r_nm >= grid_r_.back()) return 0.0;
  if (r_nm <= grid_r_.front()) return grid_rho_.front();
  const auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), r_nm);
  const std::size_t i = static_cast<std::size_t>(it - grid_r_.begin()) - 1;
  const double w = (r_nm - grid_r_[i]) / (grid_r_[i + 1] - grid_r_[i]);
  return grid_rho_[i] * (1.0 - w) + grid_rho_[i + 1] * w;
}

double DimerModel::normalization() const {
  return kind_ == Kind::AnalyticExponential ? 1.0 : norm_;
}

double DimerModel::max_radius() const {
  if (kind_ == Kind::AnalyticExponential) return 20.0 / kappa_nm_; // tail mass e^-40
  return grid_r_.back();
}

double DimerModel::tabulated_radial_moment(int power) const {
  // flat extension below the first grid point, matching density()
  double sum = 4.0 * pi * segment_poly_integral(2 + power, grid_rho_.front(), 0.0, 0.0,
                                                grid_r_.front());
  for (std::size_t i = 0; i + 1 < grid_r_.size(); ++i) {
    const double h = grid_r_[i + 1] - grid_r_[i];
    const double slope = (grid_rho_[i + 1] - grid_rho_[i]) / h;
    const double A = grid_rho_[i] - slope * grid_r_[i];
    sum += 4.0 * pi * segment_poly_integral(2 + power, A, slope, grid_r_[i], grid_r_[i + 1]);
  }
  return sum;
}

double DimerModel::tabulated_tail_integral(double r_nm) const {
  if (r_nm >= grid_r_.back()) return 0.0;
  if (r_nm <= grid_r_.front()) {
    // flat extrapolation of rho below the first grid point
    return grid_tail_.front() +
           2.0 * pi * segment_poly_integral(1, grid_rho_.front(), 0.0, r_nm, grid_r_.front());
  }
  const auto it = std::upper_bound(grid_r_.begin(), grid_r_.end(), r_nm);
  const std::size_t i = static_cast<std::size_t>(it - grid_r_.begin()) - 1;
  const double h = grid_r_[i + 1] - grid_r_[i];
  const double slope = (grid_rho_[i + 1] - grid_rho_[i]) / h;
  const double A = grid_rho_[i] - slope * grid_r_[i];
  return grid_tail_[i + 1] +
         2.0 * pi * segment_poly_integral(1, A, slope, r_nm, grid_r_[i + 1]);
}

double DimerModel::form_factor(double q_nm) const {
  const double q = std::fabs(q_nm);
  if (kind_ == Kind::AnalyticExponential) {
    const double u = q / (2.0 * kappa_nm_);
    if (u < 1e-8) return 1.0 - u * u / 3.0; // arctan series, avoids 0/0
    return std::atan(u) / u;
  }
  if (q < 1e-10) return norm_;
  // (4 pi / q) int r sin(q r) rho(r) dr, segment-wise Gauss-Legendre, with the
  // flat below-grid core included
  double sum = gl5([&](double r) { return r * std::sin(q * r) * grid_rho_.front(); }, 0.0,
                   grid_r_.front());
  for (std::size_t i = 0; i + 1 < grid_r_.size(); ++i) {
    const double h = grid_r_[i + 1] - grid_r_[i];
    const double slope = (grid_rho_[i + 1] - grid_rho_[i]) / h;
    const double A = grid_rho_[i] - slope * grid_r_[i];
    sum += gl5([&](double r) { return r * std::sin(q * r) * (A + slope * r); },
               grid_r_[i], grid_r_[i + 1]);
  }
  return 4.0 * pi / q * sum;
}

double DimerModel::transverse_density(double x2_nm) const {
  const double x = std::max(std::fabs(x2_nm), transverse_floor_nm);
  if (kind_ == Kind::AnalyticExponential)
    return kappa_nm_ * special::exp_int_e1(2.0 * kappa_nm_ * x);
  return tabulated_tail_integral(x);
}

SizeMeasures DimerModel::size_measures() const {
  SizeMeasures s;
  if (kind_ == Kind::AnalyticExponential) {
    s.mean_r_nm = 1.0 / (2.0 * kappa_nm_);
    s.mean_abs_x2_nm = 1.0 / (4.0 * kappa_nm_);
  } else {
    s.mean_r_nm = tabulated_radial_moment(1) / norm_;
    // <|x2|> = 2 int_0^inf x g(x) dx, using the marginal directly
    const double upper = grid_r_.back();
    s.mean_abs_x2_nm =
        2.0 *
        quad::integrate_or_throw<double>(
            [&](double x) { return x * tabulated_tail_integral(x); }, 0.0, upper,
            {1e-12, 1e-10, 4000}, 1e-7, "tabulated <|x2|>") /
        norm_;
  }
  s.diameter_estimate_nm = 2.0 * s.mean_r_nm;
  return s;
}

} // namespace mwdiff
