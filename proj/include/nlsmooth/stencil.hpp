#pragma once

#include <span>
#include <vector>

namespace nlsmooth {

// Finite-difference weights for derivatives 0..max_deriv at z from arbitrary nodes
// (Fornberg's recursion). Result[m][j] multiplies the sample at nodes[j].
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> nodes, int max_deriv);

// Same on the integer offsets first, first+1, ..., first+count-1 (unit spacing).
std::vector<std::vector<double>> fd_weights_offsets(double z, int first, int count, int max_deriv);

}  // namespace nlsmooth
