// Assembly and application costs of the discrete Laplace-Beltrami operator,
// over polar grids of increasing radial resolution (fixed angular count, so
// node counts scale linearly with the argument).
#include <benchmark/benchmark.h>

#include <cmath>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/graph_function.hpp>
#include <maxgraph/grid.hpp>
#include <maxgraph/induced_metric.hpp>

using namespace maxgraph;

namespace {

Grid annulus_grid(int n_radial) {
  return build_grid(MetricModel::flat(), Domain::annulus(1.0, 4.0), n_radial,
                    32);
}

std::vector<double> wave(const Grid& grid) {
  return sample_polar(grid, [](double rho, double theta) {
    return std::log(rho) * std::cos(theta);
  });
}

}  // namespace

static void BM_BuildGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Grid grid = annulus_grid(n);
    benchmark::DoNotOptimize(grid.area.data());
  }
  state.SetItemsProcessed(state.iterations() * n * 32);
}
BENCHMARK(BM_BuildGrid)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

static void BM_AssembleOperator(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const MetricField field = base_metric_field(grid);
  for (auto _ : state) {
    DiscreteOperator op = DiscreteOperator::assemble(grid, field);
    benchmark::DoNotOptimize(op.volumes().data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_AssembleOperator)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

static void BM_ApplyLaplacian(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const DiscreteOperator op =
      DiscreteOperator::assemble(grid, base_metric_field(grid));
  const std::vector<double> v = wave(grid);
  for (auto _ : state) {
    std::vector<double> lap = op.apply(v);
    benchmark::DoNotOptimize(lap.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_ApplyLaplacian)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

static void BM_GradientNorm(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const DiscreteOperator op =
      DiscreteOperator::assemble(grid, base_metric_field(grid));
  const std::vector<double> v = wave(grid);
  for (auto _ : state) {
    std::vector<double> g = op.gradient_norm2(v);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_GradientNorm)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

// Sparse Dirichlet solve; dominates the capacity and harmonic-measure
// experiments, so scaling here is what governs their wall time.
static void BM_HarmonicExtension(benchmark::State& state) {
  const Grid grid = annulus_grid(static_cast<int>(state.range(0)));
  const DiscreteOperator op =
      DiscreteOperator::assemble(grid, base_metric_field(grid));
  const std::vector<double> data =
      sample_polar(grid, [](double, double theta) { return std::cos(theta); });
  for (auto _ : state) {
    std::vector<double> u = op.harmonic_extension(data);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.node_count());
}
BENCHMARK(BM_HarmonicExtension)->Arg(33)->Arg(65)->Arg(129)->Arg(257);

BENCHMARK_MAIN();
