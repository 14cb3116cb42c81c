#include <benchmark/benchmark.h>

#include "dylr/angular.hpp"

namespace {

void BM_Wigner3jExact(benchmark::State& state) {
  const int two_j = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double acc = 0.0;
    for (int two_m = -two_j; two_m <= two_j; two_m += 2)
      acc += dylr::angular::wigner3j(two_j, 2, two_j, -two_m, 0, two_m);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_Wigner3jExact)->Arg(16)->Arg(32)->Arg(64);

void BM_SymmetrizedBasis(benchmark::State& state) {
  const int omega = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto basis = dylr::angular::symmetrized_basis(omega, dylr::angular::Parity::gerade);
    benchmark::DoNotOptimize(basis.transform.data());
  }
}
BENCHMARK(BM_SymmetrizedBasis)->Arg(0)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
