#include "nlsmooth/grid.hpp"

#include <cmath>

#include "nlsmooth/error.hpp"

namespace nlsmooth {

Grid Grid::make(double a1, double a2, double delta, int n_interior) {
  require(a2 > a1, ErrorKind::InvalidArgument, "domain must have a1 < a2");
  require(delta > 0, ErrorKind::InvalidArgument, "horizon must be positive");
  require(n_interior >= 5, ErrorKind::InvalidArgument, "need at least 5 grid points in the domain");
  Grid g;
  g.a1 = a1;
  g.a2 = a2;
  g.delta = delta;
  g.n_interior = n_interior;
  g.h = (a2 - a1) / (n_interior - 1);
  const double ratio = delta / g.h;
  g.collar = static_cast<int>(std::lround(ratio));
  g.delta_aligned = std::abs(ratio - g.collar) < 1e-12 * std::max(1.0, ratio);
  require(g.collar >= 1, ErrorKind::InvalidArgument, "grid spacing exceeds the horizon");
  return g;
}

double Grid::node(int i) const {
  return a1 + (static_cast<double>(i - collar) * (a2 - a1)) / (n_interior - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(size());
  for (int i = 0; i < size(); ++i) x[i] = node(i);
  return x;
}

int Grid::index_of(double x) const {
  const double s = (x - a1) / h + collar;
  const long i = std::lround(s);
  if (i < 0 || i >= size() || std::abs(s - static_cast<double>(i)) > 1e-9) return -1;
  return static_cast<int>(i);
}

}  // namespace nlsmooth
