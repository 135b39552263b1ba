#include <benchmark/benchmark.h>

#include <cmath>

#include "bitangent/aronhold.hpp"
#include "bitangent/bitangent_matrix.hpp"
#include "bitangent/verify.hpp"

namespace {

using namespace bitangent;

PeriodMatrix sample_tau() {
  Eigen::Matrix3cd t;
  t << cplx(0.1, 1.0), cplx(0.05, 0.03), cplx(-0.02, 0.04),
       cplx(0.05, 0.03), cplx(-0.05, 0.9), cplx(0.07, -0.01),
       cplx(-0.02, 0.04), cplx(0.07, -0.01), cplx(0.03, 1.1);
  return PeriodMatrix(t);
}

void BM_EnumerateAronhold(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_aronhold_sets());
}
BENCHMARK(BM_EnumerateAronhold)->Unit(benchmark::kMillisecond);

void BM_ThetaTable(benchmark::State& state) {
  const PeriodMatrix tau = sample_tau();
  TruncationConfig cfg;
  cfg.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_theta_table(tau, cfg));
  state.counters["radius"] = truncation_radius(tau, cfg);
}
BENCHMARK(BM_ThetaTable)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_AssembleFull(benchmark::State& state) {
  const ThetaTable table = build_theta_table(sample_tau());
  for (auto _ : state) benchmark::DoNotOptimize(assemble_full(table));
}
BENCHMARK(BM_AssembleFull)->Unit(benchmark::kMicrosecond);

void BM_VerifyAll(benchmark::State& state) {
  const ThetaTable table = build_theta_table(sample_tau());
  const BitangentMatrix m = assemble_full(table);
  for (auto _ : state) benchmark::DoNotOptimize(verify_all(table, m));
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond);

void BM_MinorQuartic(benchmark::State& state) {
  const ThetaTable table = build_theta_table(sample_tau());
  const FormMatrix forms = assemble_full(table).forms();
  for (auto _ : state) benchmark::DoNotOptimize(minor_quartic(forms, {0, 1, 2, 3}, {0, 1, 2, 3}));
}
BENCHMARK(BM_MinorQuartic)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
