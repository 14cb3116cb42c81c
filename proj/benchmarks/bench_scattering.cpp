#include <benchmark/benchmark.h>

#include "dylr/scattering.hpp"
#include "dylr/units.hpp"

namespace {

dylr::scattering::CollisionConfig default_config() {
  dylr::scattering::CollisionConfig cfg;
  cfg.reduced_mass = dylr::units::reduced_mass_au(163.929, 163.929);
  return cfg;
}

void BM_UniversalSMatrix(benchmark::State& state) {
  const auto cfg = default_config();
  const double energy = dylr::units::microkelvin_to_au(500.0);
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto s = dylr::scattering::universal_smatrix(cfg, energy, l);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_UniversalSMatrix)->Arg(0)->Arg(2)->Arg(4);

void BM_RateTable(benchmark::State& state) {
  const auto cfg = default_config();
  const auto energies = dylr::scattering::log_energy_grid(
      dylr::units::microkelvin_to_au(1.0), dylr::units::microkelvin_to_au(1000.0),
      static_cast<int>(state.range(0)));
  const double b = dylr::units::gauss_to_au(10.0);
  for (auto _ : state) {
    auto table = dylr::scattering::build_rate_table(cfg, energies, b, 1.24159, 8);
    benchmark::DoNotOptimize(table.beta_total.data());
  }
}
BENCHMARK(BM_RateTable)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
