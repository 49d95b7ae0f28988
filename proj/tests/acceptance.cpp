// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds are fixed here, not tuned at run time.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mwdiff/ags.hpp"
#include "mwdiff/bar_amplitude.hpp"
#include "mwdiff/grating.hpp"
#include "mwdiff/quadrature.hpp"
#include "mwdiff/special.hpp"
#include "mwdiff/surface.hpp"
#include "mwdiff/units.hpp"
#include "mwdiff/wavefunction.hpp"
#include "oracles.hpp"

using namespace mwdiff;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

const BeamState he2_beam{2.0 * units::constants::helium4_mass_amu, 500.0};
const BarSpec bar25{25.0};
const GratingGeometry grating50{50.0, 25.0, 100, 100.0, 8.0};

// 1. Transition-operator identity chain on 100 random Hermitian models.
void criterion_identity_suite() {
  double worst = 0.0;
  bool pass = true;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Eigen::Index dim = 4 + static_cast<Eigen::Index>(seed % 13); // 4..16
    const auto model = ags::random_model(seed, dim, 0.1, 2.0);
    const auto report_i = ags::verify_identities(model, 1e-10);
    worst = std::max(worst, report_i.max_residual());
    pass = pass && report_i.all_pass();
  }
  std::ostringstream d;
  d << "100 models, dims 4-16, worst residual " << worst << " (< 1e-10)";
  report(1, "operator identities", pass && worst < 1e-10, d.str());
}

// 2. Truncation error scales linearly; first iterate quadratically.
void criterion_truncation_scaling() {
  const auto base = ags::random_model(17, 8, 0.1, 2.0);
  std::vector<double> lx, l0, l1;
  for (double e = 1e-1; e >= 0.9e-5; e /= 10.0) {
    ags::FiniteModel m = base;
    m.v *= e;
    const auto gap = ags::truncation_gap(m);
    lx.push_back(std::log10(e));
    l0.push_back(std::log10(gap.lowest_order));
    l1.push_back(std::log10(gap.first_iteration));
  }
  auto slope = [&](const std::vector<double>& y) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += y[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double s0 = slope(l0);
  const double s1 = slope(l1);
  const bool pass = std::fabs(s0 - 1.0) <= 0.1 && std::fabs(s1 - 2.0) <= 0.2;
  std::ostringstream d;
  d << "slopes " << s0 << " (1.0 +- 0.1), " << s1 << " (2.0 +- 0.2)";
  report(2, "truncation scaling", pass, d.str());
}

// 3. A 0.01 nm dimer behaves as a point particle over |K2| <= 1.
void criterion_point_limit() {
  const auto tiny = DimerModel::calibrated_to_x2(0.01);
  double worst_diff = 0.0, worst_ref = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double k2 = i / 400.0;
    const auto tm = dimer_bar_amplitude(k2, bar25, he2_beam, tiny, true).value;
    const auto tp = point_bar_amplitude(k2, bar25, he2_beam, true).value;
    worst_diff = std::max(worst_diff, std::abs(tm - tp));
    worst_ref = std::max(worst_ref, std::abs(tp));
  }
  const double dev = worst_diff / worst_ref;
  std::ostringstream d;
  d << "max relative deviation " << dev << " (< 1e-3)";
  report(3, "point limit", dev < 1e-3, d.str());
}

// 4. Reduced amplitude equals the brute-force quadrature of the defining
//    integrals at 10 momentum transfers.
void criterion_oracle_equivalence() {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double k2 = 0.05 + (1.5 - 0.05) * i / 9.0;
    const auto fast = dimer_bar_amplitude(k2, bar25, he2_beam, he2, true).value;
    const auto slow = oracle::dimer_bar_amplitude(k2, bar25, he2_beam, he2, true);
    worst = std::max(worst, std::abs(fast - slow) / std::abs(slow));
  }
  std::ostringstream d;
  d << "worst relative difference " << worst << " (< 1e-6)";
  report(4, "oracle equivalence", worst < 1e-6, d.str());
}

// 5. Even orders vanish for point particles and reappear for the dimer.
void criterion_even_orders() {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  std::vector<double> grid{0.0, 0.3, 0.6};
  const auto point = pattern(grating50, he2_beam, nullptr, grid, true);
  const auto dimer = pattern(grating50, he2_beam, &he2, grid, true);
  const double point_r21 = point.orders[2].intensity / point.orders[1].intensity;
  const double dimer_r21 = dimer.orders[2].intensity / dimer.orders[1].intensity;
  const bool pass = point_r21 < 1e-12 && dimer_r21 > 1e-4;
  std::ostringstream d;
  d << "point I2/I1 = " << point_r21 << " (< 1e-12), dimer I2/I1 = " << dimer_r21
    << " (> 1e-4)";
  report(5, "even-order reappearance", pass, d.str());
}

// 6. Odd-order suppression deepens with the order.
void criterion_suppression_trend() {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  double prev = 1.0;
  bool pass = true;
  std::ostringstream d;
  d << "ratios";
  for (int n : {1, 3, 5}) {
    const double k2n = 2.0 * std::numbers::pi * n / grating50.period_nm;
    const double ratio = dimer_bar_amplitude(k2n, bar25, he2_beam, he2, true).intensity() /
                         point_bar_amplitude(k2n, bar25, he2_beam, true).intensity();
    d << " " << ratio;
    pass = pass && ratio < 1.0 && ratio < prev;
    prev = ratio;
  }
  d << " (strictly decreasing, all < 1)";
  report(6, "suppression trend", pass, d.str());
}

// 7. Effective-width fit lands on the lateral size.
void criterion_effective_width() {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  const auto fit = fit_effective_width(he2, bar25, he2_beam, 0.15);
  const auto tiny = DimerModel::calibrated_to_x2(0.01);
  const auto fit0 = fit_effective_width(tiny, bar25, he2_beam, 0.15);
  const bool pass = std::fabs(fit.delta_nm - 2.8) <= 0.5 && std::fabs(fit0.delta_nm) < 0.05;
  std::ostringstream d;
  d << "delta = " << fit.delta_nm << " nm (2.8 +- 0.5), near-point delta = "
    << fit0.delta_nm << " nm (|.| < 0.05)";
  report(7, "effective bar width", pass, d.str());
}

// 8. Wavefunction analytics against direct quadrature.
void criterion_wavefunction_analytics() {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  const double kappa = he2.kappa();

  double worst_f = 0.0;
  for (double q = 0.05; q <= 3.0; q += 0.21) {
    const double closed = he2.form_factor(q);
    const double quadr = quad::integrate_or_throw<double>(
        [&](double r) {
          return 4.0 * std::numbers::pi * r * he2.density(r) * std::sin(q * r) / q;
        },
        0.0, he2.max_radius(), {1e-15, 1e-12, 20000});
    worst_f = std::max(worst_f, std::fabs(closed - quadr));
  }

  double worst_g = 0.0;
  for (double x2 : {0.5 / kappa, 2.0 / kappa}) {
    const double closed = he2.transverse_density(x2);
    const double direct = oracle::transverse_density(he2, x2);
    worst_g = std::max(worst_g, std::fabs(closed - direct) / direct);
  }

  const double norm = quad::integrate_or_throw<double>(
      [&](double r) { return 4.0 * std::numbers::pi * r * r * he2.density(r); }, 0.0,
      he2.max_radius(), {1e-14, 1e-12, 20000});

  const bool pass = worst_f < 1e-8 && worst_g < 1e-6 && std::fabs(norm - 1.0) < 1e-6;
  std::ostringstream d;
  d << "form factor dev " << worst_f << " (< 1e-8), marginal dev " << worst_g
    << " (< 1e-6), norm dev " << std::fabs(norm - 1.0) << " (< 1e-6)";
  report(8, "wavefunction analytics", pass, d.str());
}

// 9. Grating function against the explicit interference sum plus N^2 scaling.
void criterion_grating_function() {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> k2_dist(1e-4, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k2 = k2_dist(rng);
    const double gf = std::fabs(grating_function(k2, 50.0, 7));
    worst = std::max(worst, std::fabs(gf - oracle::grating_sum_magnitude(k2, 50.0, 7)));
  }

  bool peaks_ok = true;
  for (int n = 0; n <= 6; ++n) {
    const double k2n = 2.0 * std::numbers::pi * n / 50.0;
    peaks_ok = peaks_ok &&
               std::fabs(std::fabs(grating_function(k2n, 50.0, 9)) - 9.0) < 1e-10;
  }

  std::vector<double> grid{0.0, 0.3, 0.6};
  GratingGeometry g50 = grating50;
  g50.bar_count = 50;
  const auto p50 = pattern(g50, he2_beam, nullptr, grid, true);
  const auto p100 = pattern(grating50, he2_beam, nullptr, grid, true);
  double worst_scaling = 0.0;
  for (std::size_t i = 0; i < p50.orders.size(); ++i) {
    if (p50.orders[i].intensity == 0.0) continue;
    worst_scaling = std::max(
        worst_scaling, std::fabs(p100.orders[i].intensity / p50.orders[i].intensity / 4.0 - 1.0));
  }

  const bool pass = worst < 1e-10 * 7 && peaks_ok && worst_scaling < 1e-6;
  std::ostringstream d;
  d << "sum dev " << worst << ", peak values +-N, N^2 scaling dev " << worst_scaling;
  report(9, "grating function", pass, d.str());
}

// 10. Surface module limits: exact geometric reduction, linear phase, wedge
//     sensitivity.
void criterion_surface_limits() {
  SurfaceSpec spec;
  spec.c3_meV_nm3 = 0.0;
  spec.geometry = grating50;
  spec.velocity_m_s = 500.0;

  const auto ap = unblocked_interval(spec);
  double worst_geo = 0.0;
  for (double k2 : {0.05, 0.21, 0.9}) {
    const double expected = 2.0 * std::sin(k2 * 0.5 * ap.width_nm()) / k2;
    const double got = std::abs(slit_transmission_amplitude(k2, spec));
    worst_geo = std::max(worst_geo, std::fabs(got - std::fabs(expected)) /
                                        std::fabs(expected));
  }

  SurfaceSpec base = spec;
  base.c3_meV_nm3 = 0.1;
  double worst_lin = 0.0;
  for (double x : {-11.0, 0.0, 7.0}) {
    SurfaceSpec c2 = base;
    c2.c3_meV_nm3 = 0.2;
    SurfaceSpec v2 = base;
    v2.velocity_m_s = 1000.0;
    const double phi = eikonal_phase(x, base);
    worst_lin = std::max(worst_lin, std::fabs(eikonal_phase(x, c2) - 2.0 * phi) / phi);
    worst_lin = std::max(worst_lin, std::fabs(eikonal_phase(x, v2) - 0.5 * phi) / phi);
  }

  std::vector<double> grid{0.0, 0.3};
  SurfaceSpec rect = base;
  rect.geometry.wedge_angle_deg = 0.0;
  const auto pat_wedge = atomic_pattern_with_surface(base, grid);
  const auto pat_rect = atomic_pattern_with_surface(rect, grid);
  const double r21_wedge = pat_wedge.orders[2].intensity / pat_wedge.orders[1].intensity;
  const double r21_rect = pat_rect.orders[2].intensity / pat_rect.orders[1].intensity;
  const double wedge_change = std::fabs(r21_wedge - r21_rect) / r21_rect;

  const bool pass = worst_geo < 1e-12 && worst_lin < 1e-12 && wedge_change > 0.01;
  std::ostringstream d;
  d << "geometric dev " << worst_geo << " (< 1e-12), linearity dev " << worst_lin
    << " (< 1e-12), wedge I2/I1 change " << wedge_change * 100.0 << "% (> 1%)";
  report(10, "surface limits", pass, d.str());
}

// 11. Repeated CLI runs produce byte-identical files.
void criterion_cli_determinism(const char* cli_path) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mwdiff_acc_det";
  fs::remove_all(dir);

  auto run = [&]() {
    const std::string cmd =
        std::string(cli_path) + " pattern --out " + dir.string() + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  bool ran = run();
  const std::string pattern_first = slurp(dir / "pattern.csv");
  const std::string orders_first = slurp(dir / "orders.csv");
  const std::string meta_first = slurp(dir / "pattern.csv.meta.json");
  ran = ran && run();
  bool identical = false;
  if (ran) {
    identical = !pattern_first.empty() && slurp(dir / "pattern.csv") == pattern_first &&
                slurp(dir / "orders.csv") == orders_first &&
                slurp(dir / "pattern.csv.meta.json") == meta_first;
  }
  fs::remove_all(dir);
  report(11, "CLI determinism", ran && identical,
         ran ? (identical ? "pattern.csv, orders.csv and sidecars byte-identical"
                          : "outputs differ between runs")
             : "CLI invocation failed");
}

} // namespace

int main(int argc, char** argv) {
  const char* cli_path = argc > 1 ? argv[1] : nullptr;

  criterion_identity_suite();
  criterion_truncation_scaling();
  criterion_point_limit();
  criterion_oracle_equivalence();
  criterion_even_orders();
  criterion_suppression_trend();
  criterion_effective_width();
  criterion_wavefunction_analytics();
  criterion_grating_function();
  criterion_surface_limits();
  if (cli_path)
    criterion_cli_determinism(cli_path);
  else
    report(11, "CLI determinism", false, "no CLI path supplied");

  if (failures == 0)
    std::printf("acceptance: all criteria satisfied\n");
  else
    std::printf("acceptance: %d criterion/criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
