#include <benchmark/benchmark.h>

#include <cmath>

#include "sepvol/bounds.hpp"
#include "sepvol/gue.hpp"
#include "sepvol/nets.hpp"
#include "sepvol/numerics.hpp"

using namespace sepvol;

static void BM_LogGamma(benchmark::State& state) {
  PrecisionContext ctx(state.range(0));
  Real x(12345.678, ctx.working_bits());
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::log_gamma(x, ctx));
  }
}
BENCHMARK(BM_LogGamma)->Arg(128)->Arg(256)->Arg(512);

static void BM_LogGammaSmallArg(benchmark::State& state) {
  PrecisionContext ctx(256);
  Real x(1.5, ctx.working_bits());
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::log_gamma(x, ctx));
  }
}
BENCHMARK(BM_LogGammaSmallArg);

static void BM_GammaK(benchmark::State& state) {
  PrecisionContext ctx(256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(numerics::gamma_k(state.range(0), ctx));
  }
}
BENCHMARK(BM_GammaK)->Arg(16)->Arg(65536);

static void BM_MomentTable(benchmark::State& state) {
  PrecisionContext ctx(256);
  long d = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gue::moment_table(d, gue::default_p_max(d), ctx));
  }
}
BENCHMARK(BM_MomentTable)->Arg(4)->Arg(64)->Arg(1000);

static void BM_NormBoundDiscrete(benchmark::State& state) {
  PrecisionContext ctx(256);
  long d = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gue::norm_bound_discrete(d, ctx));
  }
}
BENCHMARK(BM_NormBoundDiscrete)->Arg(16)->Arg(256)->Arg(1000);

static void BM_SampleGueOpNorm(benchmark::State& state) {
  mc::GaussianRng rng(42);
  long d = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gue::op_norm(gue::sample_gue(d, rng)));
  }
}
BENCHMARK(BM_SampleGueOpNorm)->Arg(2)->Arg(8)->Arg(32);

static void BM_CertifyCovering(benchmark::State& state) {
  auto pts = nets::icosphere(static_cast<int>(state.range(0)));
  auto probe = nets::certify_covering(pts, 1.9, 0.2);
  double delta = (probe.worst_gap + 0.05) * 16.0 / 15.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nets::certify_covering(pts, delta));
  }
}
BENCHMARK(BM_CertifyCovering)->Arg(1)->Arg(2)->Arg(3);

static void BM_QubytePipeline(benchmark::State& state) {
  PrecisionContext ctx(256);
  nets::NetTableRow row;
  row.m = 130;
  row.epsilon_degrees = 11.3165625;
  row.delta = 2.0 * std::sin(row.epsilon_degrees * M_PI / 360.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::separable_ratio_pipeline(8, row, ctx));
  }
}
BENCHMARK(BM_QubytePipeline);

static void BM_StateSetVolume(benchmark::State& state) {
  PrecisionContext ctx(256);
  long d = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds::log_volume_state_set(d, ctx));
  }
}
BENCHMARK(BM_StateSetVolume)->Arg(16)->Arg(256);

BENCHMARK_MAIN();
