#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsmooth/grid.hpp"
#include "nlsmooth/kernel.hpp"
#include "nlsmooth/piecewise.hpp"
#include "nlsmooth/smoothing.hpp"

namespace nlsmooth {

enum class Backend { Spectral, Dense };

std::string backend_name(Backend b);
Backend parse_backend(const std::string& name);

struct SolveConfig {
  Backend backend = Backend::Spectral;
  int n_interior = 41;
  double krylov_tol = 1e-12;
  int krylov_max_iter = 2000;
  // FFT length for the convolution; default is the smallest fast size covering the grid plus
  // one horizon on each side.
  std::optional<std::size_t> embedding_length;

  void validate() const;
};

struct DiscreteSolution {
  Grid grid;
  std::vector<double> values;
  int level = kNoSmoothing;
  Backend backend = Backend::Spectral;
  // max |L_h u - f| over the unknowns, and the bound it was certified against
  double residual = 0.0;
  double residual_bound = 0.0;

  GridFunction as_grid_function() const { return {grid, values}; }
};

// L u = f in (a1, a2), u = b on the other nodes (collar and both endpoints).
DiscreteSolution solve_constrained(const PiecewiseSmoothFunction& f, const PiecewiseSmoothFunction& b,
                                   const KernelSpec& spec, Interval domain, const SolveConfig& cfg);

// max |L_h u - f| over the unknowns of a computed solution.
double discrete_residual(const DiscreteSolution& u, const PiecewiseSmoothFunction& f,
                         const KernelSpec& spec);

struct TorusSolution {
  std::vector<double> values;
  // Mean removed from the source before dividing by the multiplier.
  double removed_mean = 0.0;
};

// Periodic problem L w = f on n equispaced samples of one period. The zero mode of w is 0.
TorusSolution solve_torus(const std::vector<double>& f, double period, const KernelSpec& spec);

struct CompatibleConstraint {
  PiecewiseSmoothFunction b = PiecewiseSmoothFunction::zero();
  SmoothingRecord record;
  // Torus nodes and the periodic solution w_M on them.
  std::vector<double> nodes;
  std::vector<double> smoothed_solution;
  double removed_mean = 0.0;
};

// Builds a constraint for which the constrained solution has no jumps where the domain meets
// the collar: smooth f to the given level, extend it periodically around an enlarged window,
// solve on the torus and add the jump carriers back. `resolution` is the number of torus
// intervals across the domain; study grids must divide it to stay nested. Jump locations default
// to the breakpoints of f inside the domain.
CompatibleConstraint construct_compatible_constraint(
    const PiecewiseSmoothFunction& f, const KernelSpec& spec, int level, Interval domain,
    std::optional<std::vector<double>> locations = std::nullopt, int resolution = 1600);

// Smooth, solve for the smoothed problem and add the jump carriers back.
DiscreteSolution resolve(const PiecewiseSmoothFunction& f, const PiecewiseSmoothFunction& b,
                         const KernelSpec& spec, Interval domain, int level,
                         const std::vector<double>& locations, const SolveConfig& cfg);

}  // namespace nlsmooth
