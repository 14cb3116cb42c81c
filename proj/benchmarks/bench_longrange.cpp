#include <benchmark/benchmark.h>

#include "dylr/atomdata.hpp"
#include "dylr/longrange.hpp"

namespace {

void BM_C6PairMatrix(benchmark::State& state) {
  const auto k = dylr::atomdata::baked_k_tensor();
  const int omega = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto m = dylr::longrange::c6_pair_matrix(k, omega);
    benchmark::DoNotOptimize(m.data());
  }
}
BENCHMARK(BM_C6PairMatrix)->Arg(0)->Arg(8)->Arg(16);

void BM_FullC6Spectrum(benchmark::State& state) {
  const auto k = dylr::atomdata::baked_k_tensor();
  for (auto _ : state) {
    auto spectra = dylr::longrange::c6_spectra(k);
    benchmark::DoNotOptimize(spectra.data());
  }
}
BENCHMARK(BM_FullC6Spectrum);

void BM_CombinedAdiabats(benchmark::State& state) {
  const auto k = dylr::atomdata::baked_k_tensor();
  const auto c6 = dylr::longrange::build_c6_block(k, 0, dylr::angular::Parity::gerade);
  const auto c3 = dylr::longrange::build_c3_block(0, dylr::angular::Parity::gerade, 1.24159);
  std::vector<double> grid;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) grid.push_back(20.0 + i);
  for (auto _ : state) {
    auto curves = dylr::longrange::combined_adiabats(c6, c3, grid);
    benchmark::DoNotOptimize(curves.energy.data());
  }
}
BENCHMARK(BM_CombinedAdiabats)->Arg(32)->Arg(181);

}  // namespace

BENCHMARK_MAIN();
