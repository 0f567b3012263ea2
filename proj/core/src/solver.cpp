#include <maxgraph/solver.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <maxgraph/discrete_operator.hpp>
#include <maxgraph/errors.hpp>
#include <maxgraph/induced_metric.hpp>
#include <maxgraph/numerics.hpp>

namespace maxgraph {

namespace {

struct Iterate {
  GraphFunction graph;
  SurfaceFields fields;
  double margin = 0.0;
  double energy = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  bool admissible = false;
};

double graph_area(const Grid& g, const GraphFunction& u) {
  double a = 0.0;
  for (int id = 0; id < g.node_count(); ++id) a += g.area[id] * u.w[id];
  return a;
}

Iterate evaluate(const Grid& g, std::vector<double> values,
                 const std::vector<int>& free_nodes, double margin_floor) {
  Iterate it;
  it.graph = make_graph(g, std::move(values), /*require_spacelike=*/false);
  it.margin =
      *std::min_element(it.graph.margin.begin(), it.graph.margin.end());
  it.admissible = std::isfinite(it.margin) && it.margin >= margin_floor;
  if (!it.admissible) return it;
  it.fields = surface_fields(g, it.graph);
  it.energy = graph_area(g, it.graph);
  it.residual = 0.0;
  for (int id : free_nodes)
    it.residual =
        std::max(it.residual, std::abs(it.fields.mean_curvature[id]));
  return it;
}

// Interior residual stencils reach at most two nodes along a chart axis
// (one-sided first-derivative reads at the rims compose with one central
// step), so two columns influence a common row only when they are within
// Chebyshev distance four of each other.  A stride-5 colouring therefore
// separates them; along a periodic angular axis every stencil stays central
// (reach one) and stride 4 suffices, which also divides the angular node
// counts in use.  The pole gets a colour of its own: its residual row
// couples to the whole first ring and is filled analytically instead.
int angular_stride(const Grid& g) { return g.periodic2 ? 4 : 5; }

int color_count(const Grid& g) { return 5 * angular_stride(g) + 1; }

int color_of(const Grid& g, int id) {
  if (id == g.pole_id) return 5 * angular_stride(g);
  return (g.gi[id] % 5) * angular_stride(g) + g.gj[id] % angular_stride(g);
}

// Free columns that can influence the residual row of each free node.  The
// window matches the stencil reach, so for any colour at most one column of
// that colour appears per row.
std::vector<std::vector<int>> stencil_pattern(
    const Grid& g, const std::vector<int>& free_nodes,
    const std::vector<int>& row_of) {
  const int wj = g.periodic2 ? 1 : 2;
  std::vector<std::vector<int>> pattern(free_nodes.size());
  for (std::size_t k = 0; k < free_nodes.size(); ++k) {
    const int id = free_nodes[k];
    if (id == g.pole_id) continue;
    auto& cols = pattern[k];
    for (int di = -2; di <= 2; ++di)
      for (int dj = -wj; dj <= wj; ++dj) {
        const int q = g.at(g.gi[id] + di, g.gj[id] + dj);
        if (q >= 0 && row_of[q] >= 0) cols.push_back(q);
      }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  }
  return pattern;
}

Eigen::SparseMatrix<double> fd_jacobian(
    const Grid& g, const std::vector<int>& free_nodes,
    const std::vector<int>& row_of,
    const std::vector<std::vector<int>>& pattern, const Iterate& base) {
  const int nf = static_cast<int>(free_nodes.size());
  std::vector<double> base_res(nf);
  for (int k = 0; k < nf; ++k)
    base_res[k] = base.fields.mean_curvature[free_nodes[k]];

  std::vector<std::vector<int>> members(color_count(g));
  for (int k = 0; k < nf; ++k)
    members[color_of(g, free_nodes[k])].push_back(k);

  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> eps(nf, 0.0);
  for (int c = 0; c < color_count(g); ++c) {
    if (members[c].empty()) continue;
    std::vector<double> v = base.graph.value;
    for (int k : members[c]) {
      // sqrt of machine epsilon, scaled to the node value
      eps[k] = 1.4901161193847656e-08 * (1.0 + std::abs(v[free_nodes[k]]));
      v[free_nodes[k]] += eps[k];
    }
    const auto pert = make_graph(g, std::move(v), /*require_spacelike=*/false);
    const auto f = surface_fields(g, pert);
    for (int r = 0; r < nf; ++r) {
      if (free_nodes[r] == g.pole_id) continue;
      const double diff = f.mean_curvature[free_nodes[r]] - base_res[r];
      if (diff == 0.0) continue;
      for (int q : pattern[r]) {
        if (color_of(g, q) != c) continue;
        trip.emplace_back(r, row_of[q], diff / eps[row_of[q]]);
        break;  // at most one column of this colour in reach
      }
    }
  }

  // Pole row: the flux balance H = sum_j k_j (u_j - u_0) / ((w_0 + w_j) A_0)
  // differentiated with the tilt factors frozen.  The neglected dependence
  // through w only perturbs the Newton direction; the residual stays exact.
  if (g.has_pole && row_of[g.pole_id] >= 0) {
    const int p = g.pole_id;
    const int r = row_of[p];
    double diag = 0.0;
    for (int j = 0; j < g.n2; ++j) {
      const int q = g.at(1, j);
      if (q < 0) continue;
      const double cond = 0.5 * (g.scale2[q] / g.scale1[q]) * g.h2 / g.h1;
      const double entry =
          cond / ((base.graph.w[p] + base.graph.w[q]) * g.area[p]);
      if (row_of[q] >= 0) trip.emplace_back(r, row_of[q], entry);
      diag -= entry;
    }
    trip.emplace_back(r, r, diag);
  }

  Eigen::SparseMatrix<double> jac(nf, nf);
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

}  // namespace

GraphFunction solve_dirichlet(const Grid& grid,
                              const std::vector<double>& boundary_values,
                              const SolverOptions& opts, SolveReport* report) {
  if (static_cast<int>(boundary_values.size()) != grid.node_count())
    throw Error("solve_dirichlet: boundary data size does not match the grid");
  if (!(opts.tolerance > 0.0) || opts.max_iterations < 1 ||
      !(opts.margin_floor > 0.0) || !(opts.margin_floor < 1.0))
    throw Error("solve_dirichlet: invalid solver options");

  SolveReport local;
  SolveReport& rep = report ? *report : local;
  rep = SolveReport{};

  std::vector<int> free_nodes;
  std::vector<int> row_of(grid.node_count(), -1);
  for (int id = 0; id < grid.node_count(); ++id)
    if (grid.is_interior(id)) {
      row_of[id] = static_cast<int>(free_nodes.size());
      free_nodes.push_back(id);
    }

  bool constant = true, seen = false;
  double level = 0.0;
  for (int id = 0; id < grid.node_count(); ++id) {
    if (grid.is_interior(id)) continue;
    if (!seen) {
      level = boundary_values[id];
      seen = true;
    } else if (boundary_values[id] != level) {
      constant = false;
      break;
    }
  }
  if (!seen) throw Error("solve_dirichlet: the grid has no boundary nodes");
  if (constant) {
    auto u =
        make_graph(grid, std::vector<double>(grid.node_count(), level));
    rep.history.push_back({0, 0.0, graph_area(grid, u), 1.0, 0.0});
    rep.converged = true;
    return u;
  }

  if (grid.periodic2 && grid.n2 % 4 != 0)
    throw Error(
        "solve_dirichlet: periodic grids need an angular node count "
        "divisible by 4 for the Jacobian colouring; got " +
        std::to_string(grid.n2));

  const auto base_op = DiscreteOperator::assemble(grid, base_metric_field(grid));
  Iterate cur = evaluate(grid, base_op.harmonic_extension(boundary_values),
                         free_nodes, opts.margin_floor);
  if (!cur.admissible) {
    int worst = 0;
    for (int id = 1; id < grid.node_count(); ++id)
      if (cur.graph.margin[id] < cur.graph.margin[worst]) worst = id;
    throw NotSpacelikeError(
        "solve_dirichlet: the harmonic starting iterate is not safely "
        "spacelike; the boundary data are too steep",
        worst, cur.graph.grad_norm2[worst]);
  }

  rep.history.push_back({0, cur.residual, cur.energy, cur.margin, 0.0});
  const auto pattern = stencil_pattern(grid, free_nodes, row_of);

  for (int it = 1; it <= opts.max_iterations; ++it) {
    if (cur.residual <= opts.tolerance) break;

    const auto jac = fd_jacobian(grid, free_nodes, row_of, pattern, cur);
    Eigen::VectorXd rhs(free_nodes.size());
    for (std::size_t k = 0; k < free_nodes.size(); ++k)
      rhs[static_cast<int>(k)] = -cur.fields.mean_curvature[free_nodes[k]];

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(jac);
    if (lu.info() != Eigen::Success)
      throw Error("solve_dirichlet: the Newton linearization is singular");
    const Eigen::VectorXd dir = lu.solve(rhs);

    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < 40 && !accepted; ++k, t *= 0.5) {
      std::vector<double> trial = cur.graph.value;
      for (std::size_t m = 0; m < free_nodes.size(); ++m)
        trial[free_nodes[m]] += t * dir[static_cast<int>(m)];
      Iterate next =
          evaluate(grid, std::move(trial), free_nodes, opts.margin_floor);
      if (!next.admissible) continue;
      if (next.residual <= (1.0 - 1e-4 * t) * cur.residual) {
        rep.history.push_back({it, next.residual, next.energy, next.margin, t});
        cur = std::move(next);
        accepted = true;
      }
    }
    if (!accepted) {
      rep.final_residual = cur.residual;
      throw Error("solve_dirichlet: line search stalled at residual " +
                  std::to_string(cur.residual));
    }
  }

  rep.final_residual = cur.residual;
  rep.converged = cur.residual <= opts.tolerance;
  if (!rep.converged)
    throw Error("solve_dirichlet: residual " + std::to_string(cur.residual) +
                " after " + std::to_string(opts.max_iterations) +
                " Newton steps (tolerance " + std::to_string(opts.tolerance) +
                ")");
  return std::move(cur.graph);
}

GraphFunction solve_rotsym_ode(const MetricModel& model, double C,
                               const Grid& grid, double anchor) {
  if (C == 0.0)
    return make_graph(grid,
                      std::vector<double>(grid.node_count(), anchor));
  if (grid.chart != Chart::Polar)
    throw Error("solve_rotsym_ode: the radial profile needs a polar grid");
  if (grid.has_pole)
    throw Error(
        "solve_rotsym_ode: C != 0 forces |grad u| -> 1 where the warp "
        "factor vanishes; use an annulus grid");

  std::vector<double> radii(grid.n1, 0.0);
  for (int i = 0; i < grid.n1; ++i) {
    const auto ids = grid.row(i);
    if (ids.empty()) throw Error("solve_rotsym_ode: empty radial row");
    radii[i] = grid.r_hat[ids.front()];
    if (!(model.f(radii[i]) > 0.0))
      throw Error(
          "solve_rotsym_ode: the warp factor vanishes inside the radial "
          "range");
  }

  const auto slope = [&](double rho) {
    const double f = model.f(rho);
    return C / std::sqrt(f * f + C * C);
  };
  std::vector<double> profile(grid.n1, anchor);
  for (int i = 0; i + 1 < grid.n1; ++i)
    profile[i + 1] = profile[i] + integrate(slope, radii[i], radii[i + 1]);

  std::vector<double> values(grid.node_count());
  for (int id = 0; id < grid.node_count(); ++id)
    values[id] = profile[grid.gi[id]];
  return make_graph(grid, std::move(values));
}

double max_interior_residual(const Grid& grid, const SurfaceFields& fields) {
  double m = 0.0;
  for (int id = 0; id < grid.node_count(); ++id)
    if (grid.is_interior(id))
      m = std::max(m, std::abs(fields.mean_curvature[id]));
  return m;
}

}  // namespace maxgraph
