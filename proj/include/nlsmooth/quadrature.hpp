#pragma once

#include <functional>
#include <vector>

namespace nlsmooth {

struct QuadratureTolerance {
  double abs = 1e-13;
  double rel = 1e-13;
};

// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureNonConvergence when the tolerance
// max(abs, rel*|I|) cannot be met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureTolerance tol = {});

// Adaptive rule with extrapolation; tolerates integrable endpoint singularities.
double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   QuadratureTolerance tol = {});

// Splits [a, b] at the given points (those strictly inside) and sums the pieces.
double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> cuts, QuadratureTolerance tol = {},
                        bool endpoint_singular = false);

}  // namespace nlsmooth
