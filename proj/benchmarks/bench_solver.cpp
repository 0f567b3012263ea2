// Costs of the nonlinear pipeline: derivative reconstruction, geometric
// field evaluation, the damped Newton solve, and the escape-probability
// random walk.
#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/parabolicity.hpp>
#include <maxgraph/solver.hpp>
#include <maxgraph/surface_fields.hpp>

using namespace maxgraph;

namespace {

Grid annulus_grid(int n_radial) {
  return build_grid(MetricModel::flat(), Domain::annulus(1.0, 4.0), n_radial,
                    16);
}

std::vector<double> catenoid_data(const Grid& grid) {
  return sample_polar(
      grid, [](double rho, double) { return std::asinh(rho); });
}

}  // namespace

static void BM_MakeGraph(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const std::vector<double> values = catenoid_data(grid);
  for (auto _ : state) {
    GraphFunction u = make_graph(grid, values);
    benchmark::DoNotOptimize(u.tilt.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_MakeGraph)->Arg(65)->Arg(129)->Arg(257);

static void BM_SurfaceFields(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const GraphFunction u = make_graph(grid, catenoid_data(grid));
  for (auto _ : state) {
    SurfaceFields fields = surface_fields(grid, u);
    benchmark::DoNotOptimize(fields.mean_curvature.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_SurfaceFields)->Arg(65)->Arg(129)->Arg(257);

// Full Newton solve from the harmonic initial iterate.  The iteration count
// stays flat in resolution (4-6 steps for this data), so the per-step
// Jacobian assembly and sparse factorisation set the slope.
static void BM_SolveDirichlet(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const std::vector<double> data = catenoid_data(grid);
  SolverOptions opts;
  opts.tolerance = 1e-10;
  SolveReport report;
  for (auto _ : state) {
    GraphFunction u = solve_dirichlet(grid, data, opts, &report);
    benchmark::DoNotOptimize(u.value.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
  state.counters["newton_steps"] =
      static_cast<double>(report.history.size() - 1);
}
BENCHMARK(BM_SolveDirichlet)->Arg(33)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);

static void BM_RandomWalkEscape(benchmark::State& state) {
  const Grid grid =
      build_grid(MetricModel::flat(), Domain::annulus(1.0, std::numbers::e),
                 65, 16, Chart::Polar, RadialSpacing::Logarithmic);
  const DiscreteOperator op =
      DiscreteOperator::assemble(grid, base_metric_field(grid));
  const int start = grid.at(32, 0);
  const long walkers = state.range(0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    WalkStats stats =
        random_walk_escape(op, grid, start, 2, 1, walkers, seed++);
    benchmark::DoNotOptimize(stats.escape_probability);
  }
  state.SetItemsProcessed(state.iterations() * walkers);
}
BENCHMARK(BM_RandomWalkEscape)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
