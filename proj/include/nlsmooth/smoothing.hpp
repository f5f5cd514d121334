#pragma once

#include <vector>

#include "nlsmooth/grid.hpp"
#include "nlsmooth/kernel.hpp"
#include "nlsmooth/piecewise.hpp"

namespace nlsmooth {

// Level value meaning "no smoothing at all".
inline constexpr int kNoSmoothing = -1;

struct SmoothingRecord {
  int level = kNoSmoothing;
  std::vector<double> locations;
  // coefficients[j][k] belongs to locations[j] and order k.
  std::vector<std::vector<double>> coefficients;
  PiecewiseSmoothFunction source = PiecewiseSmoothFunction::zero();
  KernelSpec spec;

  double coefficient(std::size_t j, int k) const { return coefficients[j][k]; }
  // sum_j sum_k c_jk phi_k(x - p_j)
  double correction(double x) const;
  PiecewiseSmoothFunction correction_function() const;
};

// Removes the jumps of f and its first `level` derivatives at each location by subtracting
// multiples of shifted L phi_k. level == kNoSmoothing returns f unchanged.
SmoothingRecord smooth(const PiecewiseSmoothFunction& f, const KernelSpec& spec, int level,
                       const std::vector<double>& locations);

// b minus the analytic jump carriers.
PiecewiseSmoothFunction smoothed_constraint(const PiecewiseSmoothFunction& b,
                                            const SmoothingRecord& record);

// Adds the jump carriers back to every node value.
GridFunction reconstruct(const GridFunction& u_smoothed, const SmoothingRecord& record);

}  // namespace nlsmooth
