// Microbenchmarks for the hot paths: a bracket evaluation, the two-path
// connection comparison, trajectory integration, and the spinor identity.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "gkflow/examples.hpp"
#include "gkflow/fields.hpp"
#include "gkflow/gk_build.hpp"
#include "gkflow/metric_bismut.hpp"
#include "gkflow/spinor.hpp"

using namespace gkflow;

static void BM_DorfmanBracket(benchmark::State& state) {
  examples::ExampleGeometry e = examples::get("kahler_torus_T4");
  std::mt19937_64 rng(7);
  fields::GSectionField a = fields::random_section(e.chart, rng);
  fields::GSectionField b = fields::random_section(e.chart, rng);
  fields::GSectionField bracket = fields::dorfman(a, b, e.chart);
  Vec p = e.samples(1, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(bracket.at(p));
}
BENCHMARK(BM_DorfmanBracket);

static void BM_TwoPathPoint(benchmark::State& state) {
  examples::ExampleGeometry e = examples::get("torus_T3_H");
  bismut::GMetricField m{e.g, e.H, e.chart};
  std::vector<Vec> pts = e.samples(1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(bismut::two_path_discrepancy(m, pts));
}
BENCHMARK(BM_TwoPathPoint);

static void BM_FlowTrajectory(benchmark::State& state) {
  examples::ExampleGeometry e = examples::get("synthetic_flow_R4");
  gk::FlowInput in = examples::flow_input(e);
  Vec p = e.samples(1, 3).front();
  for (auto _ : state) {
    gk::TrajectoryEngine engine(in, 1e-2, 100, 2);
    benchmark::DoNotOptimize(engine.at(p, 100));
  }
}
BENCHMARK(BM_FlowTrajectory);

static void BM_VerifyElliptic(benchmark::State& state) {
  const std::complex<double> z{1.0, 1.0};
  const std::complex<double> w{0.3, -0.8};
  for (auto _ : state) benchmark::DoNotOptimize(spinor::verify_elliptic(1.0, z, w));
}
BENCHMARK(BM_VerifyElliptic);

BENCHMARK_MAIN();
