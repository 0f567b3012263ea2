#pragma once

#include <vector>

#include <Eigen/Sparse>

#include <maxgraph/grid.hpp>
#include <maxgraph/induced_metric.hpp>

namespace maxgraph {

// Finite-volume Laplace-Beltrami operator for a metric field on a grid.
//
// The weight matrix S is symmetric with zero row sums: off-diagonal entries
// are edge conductances (integrated flux coefficients), so
//
//   (S v)_i = sum_j S_ij (v_j - v_i)  ~  integral of div(grad v) over cell i,
//
// and apply() divides by the cell measures to recover the Laplacian.  Face
// conductances average the nodal sqrt(det g) g^{kk}; mixed components enter
// through signed diagonal/antidiagonal edges on each plaquette of four
// nodes, which keeps S symmetric and exact for bilinear data under a
// constant metric.  Plaquettes with a missing corner (clipped Cartesian
// rims, the pole) are skipped.  Pole faces take the half-way limit of the
// radial coefficient, which is exact on a flat base.
class DiscreteOperator {
 public:
  static DiscreteOperator assemble(const Grid& grid, const MetricField& m);

  const Eigen::SparseMatrix<double>& weights() const { return s_; }
  const std::vector<double>& volumes() const { return vol_; }

  // Laplacian (S v)_i / V_i.  Boundary rows see truncated cells and are not
  // consistency points; masks exclude them.
  std::vector<double> apply(const std::vector<double>& v) const;

  // |grad v|^2 at each node as the cell share of the energy quadratic form:
  // sum_j S_ij (v_j - v_i)^2 / (2 V_i).
  std::vector<double> gradient_norm2(const std::vector<double>& v) const;

  // Energy integral -v^T S v ~ integral of |grad v|^2.
  double dirichlet_energy(const std::vector<double>& v) const;

  // Solve S u = 0 at interior nodes with u = data at boundary nodes.
  std::vector<double> harmonic_extension(const std::vector<double>& data) const;

  // True when every edge conductance is nonnegative (random-walk safe).
  bool all_edges_nonnegative() const;

 private:
  Eigen::SparseMatrix<double> s_;
  std::vector<double> vol_;
  std::vector<std::uint8_t> boundary_;
};

}  // namespace maxgraph
