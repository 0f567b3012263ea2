#include <maxgraph/discrete_operator.hpp>

#include <cmath>
#include <vector>

#include <Eigen/SparseLU>

#include <maxgraph/errors.hpp>

namespace maxgraph {

DiscreteOperator DiscreteOperator::assemble(const Grid& g,
                                            const MetricField& m) {
  if (m.node_count() != g.node_count())
    throw Error("operator assembly: metric field does not match the grid");

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(g.node_count()) * 12);
  auto add_edge = [&](int a, int b, double w) {
    if (w == 0.0) return;
    trip.emplace_back(a, b, w);
    trip.emplace_back(b, a, w);
    trip.emplace_back(a, a, -w);
    trip.emplace_back(b, b, -w);
  };
  auto c11 = [&](int id) { return m.sqrt_det[id] * m.inv11[id]; };
  auto c22 = [&](int id) { return m.sqrt_det[id] * m.inv22[id]; };
  auto c12 = [&](int id) { return m.sqrt_det[id] * m.inv12[id]; };

  const double r12 = g.h2 / g.h1, r21 = g.h1 / g.h2;
  for (int id = 0; id < g.node_count(); ++id) {
    if (id == g.pole_id) continue;
    const int i = g.gi[id], j = g.gj[id];
    const int p1 = g.at(i + 1, j);
    if (p1 >= 0) add_edge(id, p1, 0.5 * (c11(id) + c11(p1)) * r12);
    const int p2 = g.at(i, j + 1);
    if (p2 >= 0 && p2 != id) add_edge(id, p2, 0.5 * (c22(id) + c22(p2)) * r21);
  }
  if (g.has_pole) {
    for (int j = 0; j < g.n2; ++j) {
      const int id = g.at(1, j);
      if (id < 0) continue;
      add_edge(g.pole_id, id, 0.5 * c11(id) * r12);
    }
  }

  const int i0 = g.has_pole ? 1 : 0;
  const int jmax = g.periodic2 ? g.n2 : g.n2 - 1;
  for (int i = i0; i + 1 < g.n1; ++i) {
    for (int j = 0; j < jmax; ++j) {
      const int a = g.at(i, j), b = g.at(i + 1, j);
      const int c = g.at(i, j + 1), d = g.at(i + 1, j + 1);
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      add_edge(a, d, 0.25 * (c12(a) + c12(d)));
      add_edge(b, c, -0.25 * (c12(b) + c12(c)));
    }
  }

  DiscreteOperator op;
  op.s_.resize(g.node_count(), g.node_count());
  op.s_.setFromTriplets(trip.begin(), trip.end());
  op.vol_ = m.volume;
  op.boundary_ = g.boundary;
  return op;
}

std::vector<double> DiscreteOperator::apply(
    const std::vector<double>& v) const {
  Eigen::Map<const Eigen::VectorXd> x(v.data(), v.size());
  Eigen::VectorXd y = s_ * x;
  std::vector<double> out(v.size());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) out[i] = y[i] / vol_[i];
  return out;
}

std::vector<double> DiscreteOperator::gradient_norm2(
    const std::vector<double>& v) const {
  std::vector<double> acc(v.size(), 0.0);
  for (int k = 0; k < s_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(s_, k); it; ++it) {
      if (it.row() == it.col()) continue;
      const double d = v[it.row()] - v[it.col()];
      acc[it.col()] += it.value() * d * d;
    }
  }
  for (int i = 0; i < static_cast<int>(v.size()); ++i) acc[i] /= 2.0 * vol_[i];
  return acc;
}

double DiscreteOperator::dirichlet_energy(const std::vector<double>& v) const {
  Eigen::Map<const Eigen::VectorXd> x(v.data(), v.size());
  return -x.dot(s_ * x);
}

std::vector<double> DiscreteOperator::harmonic_extension(
    const std::vector<double>& data) const {
  const int n = static_cast<int>(data.size());
  std::vector<int> free_index(n, -1);
  int nf = 0;
  for (int i = 0; i < n; ++i)
    if (boundary_[i] == 0) free_index[i] = nf++;
  std::vector<double> out = data;
  if (nf == 0) return out;

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int k = 0; k < s_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(s_, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (free_index[r] < 0) continue;
      if (free_index[c] >= 0)
        trip.emplace_back(free_index[r], free_index[c], -it.value());
      else
        rhs[free_index[r]] += it.value() * data[c];
    }
  }
  Eigen::SparseMatrix<double> a(nf, nf);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
  if (lu.info() != Eigen::Success)
    throw Error("harmonic extension: sparse factorization failed");
  Eigen::VectorXd u = lu.solve(rhs);
  for (int i = 0; i < n; ++i)
    if (free_index[i] >= 0) out[i] = u[free_index[i]];
  return out;
}

bool DiscreteOperator::all_edges_nonnegative() const {
  double scale = 0.0;
  for (int k = 0; k < s_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s_, k); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  for (int k = 0; k < s_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s_, k); it; ++it)
      if (it.row() != it.col() && it.value() < -1e-14 * scale) return false;
  return true;
}

}  // namespace maxgraph
