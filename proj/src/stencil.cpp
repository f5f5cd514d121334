#include "nlsmooth/stencil.hpp"

namespace nlsmooth {

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> nodes, int max_deriv) {
  const int n = static_cast<int>(nodes.size()) - 1;
  const int m = max_deriv;
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = i < m ? i : m;
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<std::vector<double>> fd_weights_offsets(double z, int first, int count, int max_deriv) {
  std::vector<double> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = static_cast<double>(first + i);
  return fd_weights(z, nodes, max_deriv);
}

}  // namespace nlsmooth
