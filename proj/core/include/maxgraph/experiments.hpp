#pragma once

#include <string>
#include <vector>

#include <maxgraph/config.hpp>
#include <maxgraph/report.hpp>

namespace maxgraph {

// One end-to-end verdict from the fixed acceptance battery: the stable
// anchor the ledger is keyed by, the pass flag, and a one-line account of
// the measured numbers.
struct CriterionResult {
  std::string anchor;
  bool pass = false;
  std::string detail;
};

// The ten scripted scenarios behind `maxgraph suite`.  Every runner pins its
// own models, grids, seeds and tolerances so reruns are bit-for-bit
// comparable; when given an Artifacts sink it records fine-grained checks
// (and CSV tables where a trend is involved) alongside the aggregate
// verdict it returns.

// Constant and affine graphs: pinned tilt values and the pointwise
// identities between height gradient, lifted normal and phi.
CriterionResult criterion_exact_identities(Artifacts* artifacts = nullptr);
// Dirichlet solve on a flat annulus against the rotationally symmetric
// closed form, with a three-level convergence-order fit.
CriterionResult criterion_solver_oracle(Artifacts* artifacts = nullptr);
// Discrete harmonicity of the height on every solved graph, with the
// residual constant reported and checked for stability under refinement.
CriterionResult criterion_harmonic_height(Artifacts* artifacts = nullptr);
// The phi inequality chain and log-phi superharmonicity on solved graphs
// over the flat and spherical bases.
CriterionResult criterion_phi_chain(Artifacts* artifacts = nullptr);
// The radial comparison gate r * Lap(r) <= 1 on the nonnegatively curved
// models, and its failure on the hyperbolic one.
CriterionResult criterion_laplacian_gate(Artifacts* artifacts = nullptr);
// Capacity decay for the flat slice and the catenoid versus the hyperbolic
// plateau, against closed-form levels.
CriterionResult criterion_capacity_contrast(Artifacts* artifacts = nullptr);
// Monte Carlo escape probability against the discrete harmonic measure.
CriterionResult criterion_walk_agreement(Artifacts* artifacts = nullptr);
// Wedge closed forms, the cone-distance formula against brute-force
// boundary minimization, and the sublevel containment sampling matrix.
CriterionResult criterion_wedge_formulas(Artifacts* artifacts = nullptr);
// Height-bound margins and radial monotonicity of the cone distance on the
// starlike graph menagerie.
CriterionResult criterion_height_bounds(Artifacts* artifacts = nullptr);
// Flatness of solutions with affine and constant boundary data, tilt
// identity convergence, and subharmonicity of the inverse tilt.
CriterionResult criterion_rigidity(Artifacts* artifacts = nullptr);

// All ten, in the order above.
std::vector<CriterionResult> run_all_criteria(Artifacts* artifacts = nullptr);

// Config-driven entry point behind the CLI.  Reads [run] experiment =
// solve | verify | parab | wedge | rigidity | suite, runs it, records CSV
// tables and PASS/FAIL checks into `artifacts`, finalizes the artifact
// tree, and returns true iff every gated check passed.  Schema violations
// raise ConfigError pointing at the offending line of the config file.
bool run_experiment(const Config& config, Artifacts& artifacts);

}  // namespace maxgraph
