// Microbenchmarks for the hot paths: carry solving, margin computation,
// covering types, digit-test elimination, and the exhaustive verifier.

#include <benchmark/benchmark.h>

#include <vector>

#include "welim/elimination.hpp"
#include "welim/verify.hpp"

namespace {

using welim::Int;

void BM_PadicSolve(benchmark::State& state) {
  const Int p = 13;
  std::vector<Int> alpha{12, -7, 4, -9};
  Int spin = 0;
  for (auto _ : state) {
    alpha[0] = 12 - (spin++ & 3);
    benchmark::DoNotOptimize(welim::padic_solve(alpha, p));
  }
}
BENCHMARK(BM_PadicSolve);

void BM_WeightMargin(benchmark::State& state) {
  const welim::Params params(13, 2, 1);
  const welim::WeightEnumeration en(params);
  Int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(welim::weight_margin(en.at(i)));
    i = (i + 1) % en.size();
  }
}
BENCHMARK(BM_WeightMargin);

void BM_CoveringType(benchmark::State& state) {
  const welim::Params params(11, 2, 2);
  const welim::WeightEnumeration en(params);
  Int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(welim::covering_type(en.at(i)));
    i = (i + 1) % en.size();
  }
}
BENCHMARK(BM_CoveringType);

void BM_Eliminate(benchmark::State& state) {
  const welim::Params params(13, 2, 1);
  const auto rho = welim::make_semisimple(params, {{2, 119}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(welim::eliminate(rho));
  }
}
BENCHMARK(BM_Eliminate);

void BM_VerifyExhaustive(benchmark::State& state) {
  const welim::VerifyConfig config{welim::Params(13, 2, 1), 5,
                                   welim::VerifyMode::f_equals_one,
                                   welim::SamplingPolicy{}, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(welim::verify_theorem(config));
  }
}
BENCHMARK(BM_VerifyExhaustive);

}  // namespace

BENCHMARK_MAIN();
