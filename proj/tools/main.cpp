// mwdiff command line: diffraction of point atoms and weakly bound dimers by
// transmission gratings, plus the finite-dimensional transition-operator
// identity checks the theory rests on.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwdiff/ags.hpp"
#include "mwdiff/config.hpp"
#include "mwdiff/errors.hpp"
#include "mwdiff/result_table.hpp"
#include "mwdiff/version.hpp"

namespace {

using namespace mwdiff;

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;
constexpr int exit_check_failure = 4;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  bool normalized = false;
  bool point = false;
};

RunConfig load_config(const CommonOptions& opt) {
  RunConfig rc = opt.config_path.empty() ? RunConfig::defaults()
                                         : RunConfig::from_file(opt.config_path);
  if (!opt.out_dir.empty()) rc.out_dir = opt.out_dir;
  if (opt.normalized) rc.normalized = true;
  return rc;
}

std::string output_path(const RunConfig& rc, const std::string& name) {
  std::filesystem::create_directories(rc.out_dir);
  return (std::filesystem::path(rc.out_dir) / name).string();
}

ResultTable make_table(const RunConfig& rc, std::string command,
                       std::vector<std::string> columns) {
  ResultTable t;
  t.command = std::move(command);
  t.metadata = rc.resolved_entries();
  t.columns = std::move(columns);
  return t;
}

void emit(const ResultTable& t, const std::string& path) {
  write_csv(t, path);
  write_metadata_json(t, path);
  std::cout << "wrote " << path << "\n";
}

int cmd_bar(const CommonOptions& opt) {
  const RunConfig rc = load_config(opt);
  const DimerModel dimer = rc.make_dimer();
  const BarSpec bar = rc.grating.bar();

  auto table = make_table(rc, "bar", {"K2 [nm^-1]", "I_point", "I_dimer", "ratio"});
  for (double k2 : rc.k2_grid()) {
    const double ip = point_bar_amplitude(k2, bar, rc.beam, rc.normalized).intensity();
    const double id = dimer_bar_amplitude(k2, bar, rc.beam, dimer, rc.normalized).intensity();
    table.add_row({k2, ip, id, ip > 0.0 ? id / ip : 0.0});
  }
  emit(table, output_path(rc, "bar.csv"));
  return exit_ok;
}

int cmd_pattern(const CommonOptions& opt) {
  const RunConfig rc = load_config(opt);
  const DimerModel dimer = rc.make_dimer();
  const auto grid = rc.k2_grid();

  const DiffractionPattern pat_point =
      pattern(rc.grating, rc.beam, nullptr, grid, rc.normalized);
  const DiffractionPattern pat_dimer =
      pattern(rc.grating, rc.beam, &dimer, grid, rc.normalized);

  auto table = make_table(rc, "pattern", {"K2 [nm^-1]", "I_point", "I_dimer", "ratio"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ip = pat_point.intensity[i];
    const double id = pat_dimer.intensity[i];
    table.add_row({grid[i], ip, id, ip > 0.0 ? id / ip : 0.0});
  }
  emit(table, output_path(rc, "pattern.csv"));

  const DiffractionPattern& sel = opt.point ? pat_point : pat_dimer;
  const auto ratios = relative_peak_heights(sel, 1);
  auto orders = make_table(rc, "pattern-orders", {"n", "K2_n [nm^-1]", "I_n", "I_n_over_I_1"});
  orders.metadata.emplace_back("orders.model", opt.point ? "point" : "dimer");
  for (const auto& r : ratios)
    orders.add_row({static_cast<double>(r.n), r.k2_nm, r.intensity, r.ratio});
  emit(orders, output_path(rc, "orders.csv"));
  return exit_ok;
}

int cmd_fit_width(const CommonOptions& opt) {
  const RunConfig rc = load_config(opt);
  const DimerModel dimer = rc.make_dimer();
  const BarSpec bar = rc.grating.bar();

  EffectiveWidthOptions fit_opt;
  fit_opt.delta_min_nm = rc.fit_delta_min_nm;
  fit_opt.delta_max_nm = rc.fit_delta_max_nm;
  fit_opt.k2_samples = static_cast<std::size_t>(rc.fit_samples);
  const EffectiveWidthFit fit =
      fit_effective_width(dimer, bar, rc.beam, rc.fit_k2_max_nm, fit_opt);

  std::cout << "effective bar width: " << format_double(bar.width_nm) << " + "
            << format_double(fit.delta_nm) << " nm\n";
  std::cout << "delta = " << format_double(fit.delta_nm) << " nm\n";
  std::cout << "residual = " << format_double(fit.residual) << "\n";

  const BarSpec widened{bar.width_nm + fit.delta_nm};
  auto table =
      make_table(rc, "fit-width", {"K2 [nm^-1]", "I_dimer", "I_point_widened"});
  table.metadata.emplace_back("fit.delta", format_double(fit.delta_nm) + " nm");
  table.metadata.emplace_back("fit.residual", format_double(fit.residual));
  const std::size_t n = static_cast<std::size_t>(rc.fit_samples);
  for (std::size_t i = 0; i < n; ++i) {
    const double k2 = rc.fit_k2_max_nm * static_cast<double>(i) / static_cast<double>(n - 1);
    table.add_row({k2, dimer_bar_amplitude(k2, bar, rc.beam, dimer, true).intensity(),
                   point_bar_amplitude(k2, widened, rc.beam, true).intensity()});
  }
  emit(table, output_path(rc, "fit_width.csv"));
  return exit_ok;
}

int cmd_surface(const CommonOptions& opt) {
  const RunConfig rc = load_config(opt);
  SurfaceSpec spec = rc.make_surface();
  const auto grid = rc.k2_grid();

  if (!unblocked_interval(spec).open())
    std::cerr << "warning: slit fully blocked at cutoff = "
              << format_double(spec.cutoff_nm) << " nm; amplitudes are zero\n";

  const DiffractionPattern with_surface = atomic_pattern_with_surface(spec, grid);
  SurfaceSpec geometric = spec;
  geometric.c3_meV_nm3 = 0.0;
  const DiffractionPattern reference = atomic_pattern_with_surface(geometric, grid);

  auto table =
      make_table(rc, "surface", {"K2 [nm^-1]", "I_surface", "I_geometric", "ratio"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double is = with_surface.intensity[i];
    const double ig = reference.intensity[i];
    table.add_row({grid[i], is, ig, ig > 0.0 ? is / ig : 0.0});
  }
  emit(table, output_path(rc, "surface.csv"));

  auto orders = make_table(rc, "surface-orders",
                           {"n", "K2_n [nm^-1]", "I_n", "I_n_geometric"});
  for (std::size_t i = 0; i < with_surface.orders.size(); ++i)
    orders.add_row({static_cast<double>(with_surface.orders[i].n),
                    with_surface.orders[i].k2_nm, with_surface.orders[i].intensity,
                    reference.orders[i].intensity});
  emit(orders, output_path(rc, "surface_orders.csv"));
  return exit_ok;
}

int cmd_verify_ags(std::uint64_t seed, int count, int dim, double tol) {
  if (count < 1 || dim < 1) throw domain_error("verify-ags: count and dim must be >= 1");

  std::vector<std::pair<std::string, double>> worst;
  bool all_pass = true;
  for (int k = 0; k < count; ++k) {
    const auto model = ags::random_model(seed + static_cast<std::uint64_t>(k),
                                         static_cast<Eigen::Index>(dim));
    const auto report = ags::verify_identities(model, tol);
    if (worst.empty())
      for (const auto& r : report.identities) worst.emplace_back(r.name, r.residual);
    else
      for (std::size_t i = 0; i < worst.size(); ++i)
        worst[i].second = std::max(worst[i].second, report.identities[i].residual);
    all_pass = all_pass && report.all_pass();
  }

  std::cout << "models = " << count << ", dim = " << dim << ", base seed = " << seed
            << ", tol = " << format_double(tol) << "\n";
  for (const auto& [name, residual] : worst)
    std::cout << (residual < tol ? "PASS " : "FAIL ") << name
              << "  worst residual = " << format_double(residual) << "\n";
  std::cout << (all_pass ? "all identities hold" : "identity check FAILED") << "\n";
  return all_pass ? exit_ok : exit_check_failure;
}

int cmd_model_info(const CommonOptions& opt) {
  const RunConfig rc = load_config(opt);
  const DimerModel dimer = rc.make_dimer();
  const SizeMeasures s = dimer.size_measures();

  std::cout << "model = " << dimer.label() << "\n";
  if (dimer.is_analytic())
    std::cout << "kappa = " << format_double(dimer.kappa()) << " nm^-1\n";
  if (dimer.binding_energy_ueV() != 0.0)
    std::cout << "binding energy = " << format_double(dimer.binding_energy_ueV())
              << " ueV\n";
  std::cout << "<r> = " << format_double(s.mean_r_nm) << " nm\n";
  std::cout << "<|x2|> = " << format_double(s.mean_abs_x2_nm) << " nm\n";
  std::cout << "diameter estimate = " << format_double(s.diameter_estimate_nm) << " nm\n";
  for (double q : {0.0, 0.1, 0.2, 0.5, 1.0})
    std::cout << "F(" << format_double(q) << " nm^-1) = "
              << format_double(dimer.form_factor(q)) << "\n";
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"matter-wave diffraction of atoms and weakly bound dimers"};
  app.set_version_flag("--version", std::string("mwdiff ") + mwdiff::version_string);
  app.require_subcommand(1);

  CommonOptions common;
  std::uint64_t seed = 12345;
  int count = 100;
  int dim = 8;
  double tol = 1e-10;

  auto add_common = [&](CLI::App* sub, bool with_point) {
    sub->add_option("--config", common.config_path, "configuration file (key = value)");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_flag("--normalized", common.normalized,
                  "divide out the overall 2v/(2pi)^2 amplitude factor");
    if (with_point)
      sub->add_flag("--point", common.point, "emit the order table for the point particle");
  };

  auto* bar = app.add_subcommand("bar", "single-bar intensities |t|^2 on the K2 grid");
  add_common(bar, true);
  auto* pattern = app.add_subcommand("pattern", "N-bar coherent pattern and order table");
  add_common(pattern, true);
  auto* fit = app.add_subcommand("fit-width", "effective point-particle bar width fit");
  add_common(fit, false);
  auto* surface =
      app.add_subcommand("surface", "slit pattern with the attractive surface potential");
  add_common(surface, false);
  auto* verify = app.add_subcommand("verify-ags",
                                    "verify the transition-operator identities on random models");
  verify->add_option("--seed", seed, "base seed for the model generator");
  verify->add_option("--count", count, "number of random models");
  verify->add_option("--dim", dim, "matrix dimension");
  verify->add_option("--tol", tol, "residual tolerance");
  auto* info = app.add_subcommand("model-info", "print dimer model measures");
  add_common(info, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
    app.exit(e);
    return exit_config_error;
  }

  try {
    if (bar->parsed()) return cmd_bar(common);
    if (pattern->parsed()) return cmd_pattern(common);
    if (fit->parsed()) return cmd_fit_width(common);
    if (surface->parsed()) return cmd_surface(common);
    if (verify->parsed()) return cmd_verify_ags(seed, count, dim, tol);
    if (info->parsed()) return cmd_model_info(common);
  } catch (const mwdiff::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const mwdiff::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const mwdiff::validation_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const mwdiff::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  }
  return exit_config_error;
}
