#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "okc/connect.hpp"
#include "okc/flow.hpp"
#include "okc/geodesic.hpp"
#include "okc/initial.hpp"
#include "okc/oracle.hpp"
#include "okc/poisson.hpp"
#include "okc/presets.hpp"
#include "okc/steiner.hpp"

using namespace okc;

namespace {

ScalarField bumpy(const Grid2D& g) {
  return ScalarField::from_function(g, [](double x, double y) {
    return 0.5 + 0.5 * std::cos(7.0 * x) * std::sin(5.0 * y + 0.3);
  });
}

}  // namespace

static void BM_Dijkstra(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D g = create_grid(n, n, {0, 1, 0, 1});
  const ScalarField w = bumpy(g);
  GeodesicSolver solver(g);
  std::size_t source = 0;
  for (auto _ : state) {
    solver.run(source, w.values);
    benchmark::DoNotOptimize(solver.dist().data());
    source = (source + 7919) % g.size();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_Dijkstra)->Arg(32)->Arg(71)->Arg(107)->Arg(214)->Unit(benchmark::kMicrosecond);

static void BM_NeumannPoisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D g = create_grid(n, n, {0, 1, 0, 1});
  ScalarField f = bumpy(g);
  const double m = mean(f);
  for (double& v : f.values) v -= m;
  for (auto _ : state) benchmark::DoNotOptimize(solve_neumann_poisson(f).iterations);
}
BENCHMARK(BM_NeumannPoisson)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

// One semi-implicit step of the Experiment-1 preset, penalty on or off.
static void BM_FlowStep(benchmark::State& state) {
  RunConfig c = preset("exp1");
  apply_scale(c, static_cast<int>(state.range(0)));
  c.params.zeta1 = state.range(1) ? 3.0 : 0.0;
  const Grid2D g = c.grid.make();
  FlowState s(realize(c.initial, g, c.params.eps), c.params);
  FlowStepper stepper(g);
  for (auto _ : state) benchmark::DoNotOptimize(stepper.advance(s, c.sampling).krylov_iterations);
}
BENCHMARK(BM_FlowStep)->Args({3, 0})->Args({3, 1})->Args({2, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

static void BM_Connectedness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D g = create_grid(n, n, {0, 1, 0, 1});
  const ScalarField u = bumpy(g);
  ModelParams p;
  p.alpha = 0.35;
  const PairSampling sampling{PairSampling::Mode::stratified, 64, 0};
  for (auto _ : state) benchmark::DoNotOptimize(connectedness(u, Phase::one, p, sampling, true).value);
}
BENCHMARK(BM_Connectedness)->Arg(71)->Arg(107)->Unit(benchmark::kMillisecond);

static void BM_LogInteraction(benchmark::State& state) {
  const ShapeSpec disk = Disk{{0.0, 0.0}, 1.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_interaction(disk, n));
}
BENCHMARK(BM_LogInteraction)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_SteinerTree(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(0.0, 1.0);
  std::vector<Point> pts(static_cast<std::size_t>(state.range(0)));
  for (Point& p : pts) p = {c(rng), c(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(steiner_length(pts));
}
BENCHMARK(BM_SteinerTree)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
