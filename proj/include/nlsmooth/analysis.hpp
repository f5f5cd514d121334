#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsmooth/fixtures.hpp"
#include "nlsmooth/grid.hpp"
#include "nlsmooth/kernel.hpp"
#include "nlsmooth/piecewise.hpp"
#include "nlsmooth/solver.hpp"

namespace nlsmooth {

// Right minus left one-sided estimate of the k-th derivative at the node p, each side from a
// degree k+2 interpolant through k+3 nodes (the left side excludes p itself).
double estimate_jump_fd(const GridFunction& u, double p, int k);

struct CascadeEntry {
  double location = 0.0;
  int order = 0;
  double magnitude = 0.0;
  // |magnitude| over the median control magnitude of the same order
  double ratio = 0.0;
  bool flagged = false;
  bool control = false;
};

struct CascadeReport {
  std::vector<CascadeEntry> entries;
  double threshold = 20.0;
  std::vector<const CascadeEntry*> flagged() const;
};

// Jump estimates at +-k*delta (k = 1..kmax) and at `extra` locations, for orders 0..kmax+1
// (at most 4). Each estimate is divided by the median estimate on a ring of nearby nodes; 10 random
// control nodes, one horizon inside the domain and away from multiples of delta, get the same test.
CascadeReport cascade_scan(const DiscreteSolution& u, const KernelSpec& spec, int kmax,
                           const std::vector<double>& extra = {}, unsigned seed = 20240611u);

struct BlowupSample {
  double h = 0.0;
  int n_interior = 0;
  double max_derivative = 0.0;
};

// Dense solves on successively halved grids, recording max |u^(j)| over the nodes within 3h of
// the jump at 0 (one-sided stencils that never cross it). The source is smoothed up to level
// min(j-1, budget) first.
std::vector<BlowupSample> blowup_probe(const KernelSpec& spec, const PiecewiseSmoothFunction& f, int j,
                                       int refinements, Interval domain = {-1.0, 1.0}, int n0 = 41);

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;
  std::optional<double> order;
};

struct ConvergenceReport {
  std::string example;
  int level = kNoSmoothing;
  Backend backend = Backend::Spectral;
  std::string norm = "max over grid nodes";
  std::vector<ConvergenceRow> rows;
};

// log(E1/E2) / log(N2/N1) for consecutive entries.
std::vector<std::optional<double>> observed_orders(const std::vector<int>& ns, const std::vector<double>& errors);

// Everything a study over several grids and levels shares: the fixture, its constraint
// (constructed when the fixture has none) and, without an exact solution, a fine reference.
struct StudySetup {
  Fixture fixture;
  PiecewiseSmoothFunction constraint = PiecewiseSmoothFunction::zero();
  std::optional<DiscreteSolution> reference;
  int reference_n = 401;
};

StudySetup prepare_study(const Fixture& fx, const SolveConfig& cfg, int reference_n = 401);

// One row per grid size; errors against the exact solution or, nested, against the reference.
ConvergenceReport convergence_study(const StudySetup& setup, const std::vector<int>& ns, int level,
                                    const SolveConfig& cfg, int jobs = 1);

struct JumpRelation {
  std::vector<double> source_jumps;
  std::vector<double> solution_jumps;
  std::vector<double> predicted;
  std::vector<double> deviations;
  double max_deviation = 0.0;
};

// Measures [f^(k)]_p for f = L u (quadrature on both sides of p, 10-node one-sided stencils of
// spacing h, default delta/64) and compares with sum_{i<=k} [u^(i)]_p [(L phi_i)^(k)]_0.
// For a kernel smooth at the origin this is -alpha [u^(k)]_p.
JumpRelation verify_jump_relation(const KernelSpec& spec, const PiecewiseSmoothFunction& u, int kmax,
                                  double p = 0.0, std::optional<double> h = std::nullopt);

}  // namespace nlsmooth
