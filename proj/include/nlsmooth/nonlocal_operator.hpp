#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nlsmooth/fft.hpp"
#include "nlsmooth/grid.hpp"
#include "nlsmooth/kernel.hpp"
#include "nlsmooth/piecewise.hpp"
#include "nlsmooth/quadrature.hpp"

namespace nlsmooth {

// Integral of (u(y) - u(x)) K(x - y) over the horizon of x, by adaptive quadrature split at x,
// x +- delta and every breakpoint of u in between.
double apply_L_quadrature(const PiecewiseSmoothFunction& u, const KernelSpec& spec, double x,
                          QuadratureTolerance tol = {1e-11, 1e-13});

enum class ConvolutionRule {
  // Trapezoid weights plus endpoint corrections at the kernel breakpoints -delta, 0, delta.
  CorrectedTrapezoid,
  // Exact moments of K against piecewise-linear hats.
  ProductLinear,
};

ConvolutionRule default_rule(const KernelSpec& spec);

// L_h on a grid: (sum_j W_j u_{i-j}) + local corrections - alpha_h u_i, with u zero beyond the
// node range. The convolution runs through an FFT of length >= size + 2*reach + 1.
class DiscreteOperator {
 public:
  DiscreteOperator(const Grid& grid, const KernelSpec& spec,
                   std::optional<std::size_t> fft_length = std::nullopt);
  DiscreteOperator(const Grid& grid, const KernelSpec& spec, ConvolutionRule rule,
                   std::optional<std::size_t> fft_length = std::nullopt);

  const Grid& grid() const { return grid_; }
  ConvolutionRule rule() const { return rule_; }
  int reach() const { return reach_; }
  // W_{-reach..reach}
  const std::vector<double>& weights() const { return weights_; }
  double discrete_alpha() const { return alpha_h_; }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& corrections() const { return corr_; }

  std::vector<double> apply(std::span<const double> u) const;
  Eigen::MatrixXd dense() const;

 private:
  void build_weights(const KernelSpec& spec);
  void build_corrections(const KernelSpec& spec);

  Grid grid_;
  ConvolutionRule rule_;
  int reach_ = 0;
  std::vector<double> weights_;
  double alpha_h_ = 0.0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> corr_;
  RealFft fft_;
  std::vector<std::complex<double>> weights_hat_;
};

GridFunction apply_L_grid(const GridFunction& u, const KernelSpec& spec);

}  // namespace nlsmooth
