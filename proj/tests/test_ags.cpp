#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "mwdiff/ags.hpp"
#include "mwdiff/errors.hpp"

using namespace mwdiff;
using ags::Complex;
using ags::FiniteModel;
using ags::Matrix;

namespace {

FiniteModel zero_potential_model(Eigen::Index dim, Complex z) {
  FiniteModel m;
  m.h0 = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m.h0(i, i) = Complex(static_cast<double>(i + 1), 0.0);
  m.v = Matrix::Zero(dim, dim);
  m.w = Matrix::Zero(dim, dim);
  m.z = z;
  return m;
}

} // namespace

TEST_SUITE("ags") {

TEST_CASE("model validation") {
  FiniteModel m = ags::random_model(1, 4);
  CHECK_NOTHROW(m.validate());

  FiniteModel real_z = m;
  real_z.z = Complex(1.0, 0.0);
  CHECK_THROWS_AS(real_z.validate(), domain_error);

  FiniteModel mismatched = m;
  mismatched.v = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(mismatched.validate(), domain_error);

  FiniteModel skew = m;
  skew.w(0, 1) += Complex(0.5, 0.0); // breaks Hermiticity
  CHECK_THROWS_AS(skew.validate(), domain_error);
}

TEST_CASE("diagonal resolvent") {
  const auto m = zero_potential_model(3, Complex(0.0, 1.0));
  const auto r = ags::resolvents(m);
  for (Eigen::Index i = 0; i < 3; ++i) {
    const Complex expected = 1.0 / (Complex(0.0, 1.0) - Complex(static_cast<double>(i + 1), 0.0));
    CHECK(std::abs(r.g0(i, i) - expected) < 1e-14);
  }
  // V = W = 0: all four resolvents coincide
  CHECK((r.g - r.g0).norm() < 1e-14);
  CHECK((r.gv - r.g0).norm() < 1e-14);
  CHECK((r.gw - r.g0).norm() < 1e-14);
}

TEST_CASE("resolvents satisfy their defining equations") {
  const auto m = ags::random_model(99, 8);
  const auto r = ags::resolvents(m);
  const Matrix id = Matrix::Identity(8, 8);
  const Matrix zi = m.z * id;
  CHECK(((zi - m.h0) * r.g0 - id).norm() < 1e-12);
  CHECK(((zi - m.h0 - m.v) * r.gv - id).norm() < 1e-12);
  CHECK(((zi - m.h0 - m.w) * r.gw - id).norm() < 1e-12);
  CHECK(((zi - m.h0 - m.v - m.w) * r.g - id).norm() < 1e-12);
}

TEST_CASE("scalar t-matrix") {
  // 1x1 model: T = w + w^2/(z - h - w)
  const Complex z(0.3, 0.7);
  const double h = 0.4, w = 1.3;
  Matrix h0(1, 1), x(1, 1);
  h0(0, 0) = h;
  x(0, 0) = w;
  const Matrix t = ags::t_matrix(h0, x, z);
  const Complex expected = w + w * w / (z - h - w);
  CHECK(std::abs(t(0, 0) - expected) < 1e-14);

  // X = 0 -> T = 0
  CHECK(ags::t_matrix(h0, Matrix::Zero(1, 1), z).norm() == 0.0);
}

TEST_CASE("t-matrix satisfies the Lippmann-Schwinger relation") {
  const auto m = ags::random_model(7, 8);
  const auto r = ags::resolvents(m);
  const Matrix tw = ags::t_matrix(m.h0, m.w, m.z);
  CHECK(ags::relative_residual(m.w + m.w * r.g0 * tw, tw) < 1e-10);
  // T_W G0 = W G_W
  CHECK(ags::relative_residual(tw * r.g0, m.w * r.gw) < 1e-10);
}

TEST_CASE("transition operators in degenerate limits") {
  // W = 0: U_VV = 0 and both U_WV routes give G0^-1
  auto no_external = ags::random_model(11, 6);
  no_external.w = Matrix::Zero(6, 6);
  CHECK(ags::u_vv_from_definition(no_external).norm() < 1e-10);

  const Matrix a0 = no_external.z * Matrix::Identity(6, 6) - no_external.h0;
  const Matrix uwv_def = ags::u_wv_from_definition(no_external);
  CHECK(ags::relative_residual(uwv_def, a0) < 1e-12);
  const auto r = ags::resolvents(no_external);
  const Matrix tv = ags::t_matrix(no_external.h0, no_external.v, no_external.z);
  const Matrix uvv = ags::u_vv_from_definition(no_external);
  CHECK(ags::relative_residual(a0 + tv * r.g0 * uvv, uwv_def) < 1e-12);

  // V = 0: U_VV reduces to T_W
  auto free_internal = ags::random_model(13, 6);
  free_internal.v = Matrix::Zero(6, 6);
  const Matrix uvv2 = ags::u_vv_from_definition(free_internal);
  const Matrix tw = ags::t_matrix(free_internal.h0, free_internal.w, free_internal.z);
  CHECK(ags::relative_residual(uvv2, tw) < 1e-11);

  // V = W = 0: U_WV = G0^-1
  const auto empty = zero_potential_model(4, Complex(0.2, 0.9));
  const Matrix a0e = empty.z * Matrix::Identity(4, 4) - empty.h0;
  CHECK(ags::relative_residual(ags::u_wv_from_definition(empty), a0e) < 1e-13);
}

TEST_CASE("identity chain holds on random models") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::Index dim = 4 + static_cast<Eigen::Index>(seed % 13); // 4..16
    const auto m = ags::random_model(seed, dim);
    const auto report = ags::verify_identities(m, 1e-10);
    CAPTURE(seed);
    CHECK(report.all_pass());
    CHECK(report.identities.size() == 8);
  }
}

TEST_CASE("report structure") {
  const auto m = ags::random_model(2, 8);
  const auto report = ags::verify_identities(m, 1e-10);
  CHECK(report.tolerance == 1e-10);
  CHECK(report.max_residual() < 1e-10);
  for (const auto& r : report.identities) CHECK(r.residual >= 0.0);
  // an impossible tolerance fails every identity with nonzero residual
  const auto strict = ags::verify_identities(m, 1e-18);
  CHECK(!strict.all_pass());
}

TEST_CASE("identities are scale covariant") {
  const auto m = ags::random_model(3, 8);
  FiniteModel scaled = m;
  const double lambda = 3.7;
  scaled.h0 *= lambda;
  scaled.v *= lambda;
  scaled.w *= lambda;
  scaled.z *= lambda;
  const auto r1 = ags::verify_identities(m, 1e-10);
  const auto r2 = ags::verify_identities(scaled, 1e-10);
  for (std::size_t i = 0; i < r1.identities.size(); ++i)
    CHECK(r1.identities[i].residual ==
          doctest::Approx(r2.identities[i].residual).epsilon(1e-1).scale(1e-12));
}

TEST_CASE("hermitian analyticity of U_VV") {
  const auto m = ags::random_model(5, 8);
  FiniteModel conj = m;
  conj.z = std::conj(m.z);
  const Matrix u = ags::u_vv_from_definition(m);
  const Matrix u_at_zbar = ags::u_vv_from_definition(conj);
  CHECK(ags::relative_residual(u_at_zbar, u.adjoint()) < 1e-12);
}

TEST_CASE("truncation gap scaling") {
  const auto base = ags::random_model(17, 8);
  // V = 0: gap vanishes
  FiniteModel free = base;
  free.v = Matrix::Zero(8, 8);
  const auto g0 = ags::truncation_gap(free);
  CHECK(g0.defined);
  CHECK(g0.lowest_order < 1e-12);

  std::vector<double> eps, gap0, gap1;
  for (double e = 1e-1; e >= 0.9e-5; e /= 10.0) {
    FiniteModel m = base;
    m.v *= e;
    const auto g = ags::truncation_gap(m);
    REQUIRE(g.defined);
    eps.push_back(std::log10(e));
    gap0.push_back(std::log10(g.lowest_order));
    gap1.push_back(std::log10(g.first_iteration));
  }
  auto slope = [&](const std::vector<double>& y) {
    const std::size_t n = eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += eps[i];
      sy += y[i];
      sxx += eps[i] * eps[i];
      sxy += eps[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  CHECK(slope(gap0) == doctest::Approx(1.0).epsilon(0.1));
  CHECK(slope(gap1) == doctest::Approx(2.0).epsilon(0.1));
  // the first iterate is uniformly more accurate
  for (std::size_t i = 0; i < gap0.size(); ++i) CHECK(gap1[i] < gap0[i]);
}

TEST_CASE("random model reproducibility") {
  const auto a = ags::random_model(123, 8);
  const auto b = ags::random_model(123, 8);
  CHECK((a.h0 - b.h0).norm() == 0.0);
  CHECK((a.v - b.v).norm() == 0.0);
  CHECK((a.w - b.w).norm() == 0.0);
  CHECK(a.z == b.z);
  CHECK(a.z.imag() >= 0.1);
  CHECK(a.z.imag() <= 2.0);
  const auto c = ags::random_model(124, 8);
  CHECK((a.h0 - c.h0).norm() > 0.0);
}

} // TEST_SUITE
