#pragma once

#include <vector>

namespace nlsmooth {

// Uniform nodes on [a1 - collar*h, a2 + collar*h]; the n_interior nodes of [a1, a2]
// include both endpoints.
struct Grid {
  double a1 = 0.0;
  double a2 = 1.0;
  double delta = 0.0;
  int n_interior = 0;
  double h = 0.0;
  int collar = 0;
  bool delta_aligned = true;

  static Grid make(double a1, double a2, double delta, int n_interior);

  int size() const { return n_interior + 2 * collar; }
  double node(int i) const;
  std::vector<double> nodes() const;
  // Strict interior of the domain: the unknowns of the constrained problem.
  int first_unknown() const { return collar + 1; }
  int last_unknown() const { return collar + n_interior - 2; }
  bool is_unknown(int i) const { return i >= first_unknown() && i <= last_unknown(); }
  // Index of the node at x, or -1 when x is not within 1e-9 h of a node.
  int index_of(double x) const;
};

struct GridFunction {
  Grid grid;
  std::vector<double> values;
};

}  // namespace nlsmooth
