#include <benchmark/benchmark.h>

#include <vector>

#include "mwdiff/ags.hpp"
#include "mwdiff/bar_amplitude.hpp"
#include "mwdiff/grating.hpp"
#include "mwdiff/special.hpp"
#include "mwdiff/surface.hpp"
#include "mwdiff/wavefunction.hpp"

using namespace mwdiff;

namespace {

const BeamState he2_beam{8.005204, 500.0};
const BarSpec bar25{25.0};
const GratingGeometry grating50{50.0, 25.0, 100, 100.0, 8.0};

void BM_exp_int_e1(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::exp_int_e1(x));
    x = x < 20.0 ? x * 1.001 : 0.01;
  }
}
BENCHMARK(BM_exp_int_e1);

void BM_form_factor(benchmark::State& state) {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  double q = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(he2.form_factor(q));
    q = q < 3.0 ? q + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_form_factor);

void BM_transverse_density(benchmark::State& state) {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  double x2 = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(he2.transverse_density(x2));
    x2 = x2 < 30.0 ? x2 * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_transverse_density);

void BM_point_bar_amplitude(benchmark::State& state) {
  double k2 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(point_bar_amplitude(k2, bar25, he2_beam, true));
    k2 = k2 < 1.5 ? k2 + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_point_bar_amplitude);

void BM_dimer_bar_amplitude(benchmark::State& state) {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  double k2 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dimer_bar_amplitude(k2, bar25, he2_beam, he2, true));
    k2 = k2 < 1.5 ? k2 + 1e-2 : 0.0;
  }
}
BENCHMARK(BM_dimer_bar_amplitude);

void BM_pattern_grid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = 1.5 * static_cast<double>(i) / static_cast<double>(n - 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(pattern(grating50, he2_beam, nullptr, grid, true));
}
BENCHMARK(BM_pattern_grid)->Arg(256)->Arg(1024);

void BM_slit_transmission(benchmark::State& state) {
  SurfaceSpec spec;
  spec.c3_meV_nm3 = 0.1;
  spec.geometry = grating50;
  spec.velocity_m_s = 500.0;
  double k2 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slit_transmission_amplitude(k2, spec));
    k2 = k2 < 1.0 ? k2 + 1e-2 : 0.0;
  }
}
BENCHMARK(BM_slit_transmission);

void BM_verify_identities(benchmark::State& state) {
  const auto model = ags::random_model(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ags::verify_identities(model, 1e-10));
}
BENCHMARK(BM_verify_identities)->Arg(8)->Arg(16);

void BM_effective_width_fit(benchmark::State& state) {
  const auto he2 = DimerModel::calibrated_to_x2(2.8);
  EffectiveWidthOptions opt;
  opt.k2_samples = 121;
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_effective_width(he2, bar25, he2_beam, 0.15, opt));
}
BENCHMARK(BM_effective_width_fit);

} // namespace

BENCHMARK_MAIN();
