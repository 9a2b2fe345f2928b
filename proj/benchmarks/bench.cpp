#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fdecay/constructions.hpp"
#include "fdecay/kernels.hpp"
#include "fdecay/norms.hpp"
#include "fdecay/transforms.hpp"

using namespace fdecay;

static void BM_BesselJ0(benchmark::State& st) {
  double x = 0.37, s = 0;
  for (auto _ : st) {
    s += bessel_j(BesselOrder::integer(0), x);
    x = x < 200 ? x * 1.01 : 0.37;
  }
  benchmark::DoNotOptimize(s);
}
BENCHMARK(BM_BesselJ0);

static void BM_TransformBatch(benchmark::State& st) {
  auto mu = sphere_measure(1, 2, static_cast<std::size_t>(st.range(0)));
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-32, 32);
  std::vector<double> pts(2 * 1024);
  for (double& p : pts) p = u(g);
  for (auto _ : st) benchmark::DoNotOptimize(fourier_transform_batch(mu, pts));
  st.SetItemsProcessed(st.iterations() * 1024 * st.range(0));
}
BENCHMARK(BM_TransformBatch)->Arg(256)->Arg(2048);

static void BM_LatticeField(benchmark::State& st) {
  auto ft = [](std::span<const double> xi) { return cplx(sphere_ft(1, xi)); };
  FrequencyWindow W{0.125, static_cast<double>(st.range(0)), 0.125, 2};
  LatticeOptions o;
  o.orthant = true;
  o.keep_points = false;
  for (auto _ : st) benchmark::DoNotOptimize(riesz_field(ft, 1.0, W, Executor{}, o));
}
BENCHMARK(BM_LatticeField)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_WeakNorm(benchmark::State& st) {
  std::mt19937_64 g(2);
  std::exponential_distribution<double> e(1.0);
  SampledField F(1, 1e-3, false);
  const double x[] = {0.0};
  for (long i = 0; i < st.range(0); ++i) F.push(x, e(g));
  for (auto _ : st) benchmark::DoNotOptimize(weak_lp_norm(F, 4.0 / 3));
}
BENCHMARK(BM_WeakNorm)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

static void BM_SupHeat(benchmark::State& st) {
  auto mu = cantor_measure(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(sup_heat_convolve(mu, 1e-4));
}
BENCHMARK(BM_SupHeat)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_BesovCircle(benchmark::State& st) {
  auto mu = sphere_measure(1, 2, 512);
  const auto G = resolved_time_grid(mu);
  for (auto _ : st) benchmark::DoNotOptimize(besov_norm(mu, 1.0, G));
}
BENCHMARK(BM_BesovCircle)->Unit(benchmark::kMillisecond);

static void BM_RademacherFt(benchmark::State& st) {
  static BumpProfile B;
  auto L = rademacher_layout(B, 2, static_cast<double>(st.range(0)), 2.0, 16, 1);
  const double xi[] = {1.3 * st.range(0), 0.2 * st.range(0)};
  for (auto _ : st) benchmark::DoNotOptimize(L.analytic_ft(xi));
  st.counters["terms"] = static_cast<double>(L.terms());
}
BENCHMARK(BM_RademacherFt)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
