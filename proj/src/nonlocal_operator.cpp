#include "nlsmooth/nonlocal_operator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include <spdlog/spdlog.h>

#include "nlsmooth/error.hpp"
#include "nlsmooth/stencil.hpp"

namespace nlsmooth {

namespace {

constexpr int kCorrectionTerms = 5;
constexpr int kMaxCorrectionDerivative = 2 * kCorrectionTerms - 1;
constexpr int kStencilWidth = 2 * kCorrectionTerms + 3;
constexpr std::array<double, kCorrectionTerms> kBernoulli{1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                                                          -1.0 / 30.0, 5.0 / 66.0};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

int compute_reach(const Grid& g, ConvolutionRule rule) {
  if (g.delta_aligned) return g.collar;
  const double ratio = g.delta / g.h;
  return rule == ConvolutionRule::ProductLinear ? static_cast<int>(std::ceil(ratio))
                                                : static_cast<int>(std::floor(ratio));
}

std::size_t fft_size(const Grid& g, int reach, std::optional<std::size_t> requested) {
  const std::size_t minimum = static_cast<std::size_t>(g.size() + 2 * reach + 1);
  return good_fft_size(std::max(minimum, requested.value_or(0)));
}

}  // namespace

double apply_L_quadrature(const PiecewiseSmoothFunction& u, const KernelSpec& spec, double x,
                          QuadratureTolerance tol) {
  const double d = spec.delta;
  const double ux = u(x);
  std::vector<double> cuts{x};
  for (double b : u.breakpoints())
    if (b > x - d && b < x + d) cuts.push_back(b);
  auto integrand = [&](double y) { return (u(y) - ux) * eval_kernel(spec, x - y); };
  const bool singular = spec.family == KernelFamily::TruncatedPower ||
                        spec.family == KernelFamily::PowerComplement;
  return integrate_pieces(integrand, x - d, x + d, cuts, tol, singular);
}

ConvolutionRule default_rule(const KernelSpec& spec) {
  if (spec.family == KernelFamily::TruncatedPower || spec.family == KernelFamily::PowerComplement)
    return ConvolutionRule::ProductLinear;
  return ConvolutionRule::CorrectedTrapezoid;
}

DiscreteOperator::DiscreteOperator(const Grid& grid, const KernelSpec& spec,
                                   std::optional<std::size_t> fft_length)
    : DiscreteOperator(grid, spec, default_rule(spec), fft_length) {}

DiscreteOperator::DiscreteOperator(const Grid& grid, const KernelSpec& spec, ConvolutionRule rule,
                                   std::optional<std::size_t> fft_length)
    : grid_(grid),
      rule_(rule),
      reach_(compute_reach(grid, rule)),
      fft_(fft_size(grid, reach_, fft_length)) {
  require(std::abs(grid.delta - spec.delta) <= 1e-12 * spec.delta, ErrorKind::InvalidArgument,
          "grid and kernel horizons differ");
  if (rule == ConvolutionRule::CorrectedTrapezoid && spec.family == KernelFamily::TruncatedPower)
    fail(ErrorKind::InvalidArgument, "corrected trapezoid rule needs a bounded kernel");
  if (!grid.delta_aligned)
    spdlog::warn("MisalignedHorizon: delta/h = {} is not an integer; accuracy degrades",
                 grid.delta / grid.h);
  build_weights(spec);
  corr_.resize(grid_.size(), grid_.size());
  if (rule_ == ConvolutionRule::CorrectedTrapezoid) build_corrections(spec);
  std::vector<double> padded(fft_.size(), 0.0);
  const auto L = static_cast<long>(fft_.size());
  for (int j = -reach_; j <= reach_; ++j) padded[(j + L) % L] = weights_[j + reach_];
  weights_hat_ = fft_.forward(padded);
}

void DiscreteOperator::build_weights(const KernelSpec& spec) {
  const double h = grid_.h;
  const double d = spec.delta;
  weights_.assign(2 * reach_ + 1, 0.0);
  if (rule_ == ConvolutionRule::CorrectedTrapezoid) {
    for (int j = 0; j <= reach_; ++j) {
      const double z = j * h;
      double w;
      if (grid_.delta_aligned && j == reach_)
        w = 0.5 * h * (spec.family == KernelFamily::Bump ? 0.0 : spec.profile->value(d));
      else
        w = h * eval_kernel(spec, z);
      weights_[reach_ + j] = weights_[reach_ - j] = w;
    }
  } else {
    const ExprPtr a0 = moment_antiderivative(spec, 0);
    const ExprPtr a1 = moment_antiderivative(spec, 1);
    auto F0 = [&](double t) { return a0->value(std::min(t, d)); };
    auto F1 = [&](double t) { return a1->value(std::min(t, d)); };
    weights_[reach_] = 2.0 * ((F0(h) - F0(0.0)) - (F1(h) - F1(0.0)) / h);
    for (int j = 1; j <= reach_; ++j) {
      const double lo = (j - 1) * h, mid = j * h, hi = (j + 1) * h;
      const double rising = ((F1(mid) - F1(lo)) - lo * (F0(mid) - F0(lo))) / h;
      const double falling = (hi * (F0(hi) - F0(mid)) - (F1(hi) - F1(mid))) / h;
      weights_[reach_ + j] = weights_[reach_ - j] = rising + falling;
    }
  }
  alpha_h_ = 0.0;
  for (double w : weights_) alpha_h_ += w;
}

void DiscreteOperator::build_corrections(const KernelSpec& spec) {
  const int n = grid_.size();
  const double h = grid_.h;
  const int top = kMaxCorrectionDerivative;

  // Jumps [K^(n)]_b at each kernel breakpoint b = offset * h.
  std::vector<std::pair<int, std::vector<double>>> breaks;
  {
    const auto d0 = profile_derivatives(spec, 0.0, top);
    std::vector<double> jumps(top + 1, 0.0);
    bool any = false;
    for (int k = 1; k <= top; k += 2) {
      jumps[k] = 2.0 * d0[k];
      any = any || jumps[k] != 0.0;
    }
    if (any) breaks.emplace_back(0, jumps);
  }
  if (grid_.delta_aligned) {
    const auto dd = profile_derivatives(spec, spec.delta, top);
    std::vector<double> right(top + 1), left(top + 1);
    bool any = false;
    for (int k = 0; k <= top; ++k) {
      right[k] = -dd[k];
      left[k] = (k % 2 ? -1.0 : 1.0) * dd[k];
      any = any || dd[k] != 0.0;
    }
    if (any) {
      breaks.emplace_back(reach_, right);
      breaks.emplace_back(-reach_, left);
    }
  }
  if (breaks.empty()) return;
  if (n < kStencilWidth)
    fail(ErrorKind::InsufficientStencil,
         "corrected rule needs at least " + std::to_string(kStencilWidth) + " nodes");

  // e[b][a]: coefficient of u^(a)(x - b).
  std::vector<std::vector<double>> coef(breaks.size(), std::vector<double>(top + 1, 0.0));
  for (std::size_t b = 0; b < breaks.size(); ++b) {
    for (int m = 1; m <= kCorrectionTerms; ++m) {
      const int order = 2 * m - 1;
      const double base = kBernoulli[m - 1] * std::pow(h, 2 * m) / factorial(2 * m);
      for (int a = 0; a <= order; ++a)
        coef[b][a] += base * binomial(order, a) * (a % 2 ? -1.0 : 1.0) * breaks[b].second[order - a];
    }
  }
  for (const auto& e : coef) alpha_h_ += e[0];

  // Derivative stencils depend only on the position of the target inside its window.
  std::map<int, std::vector<std::vector<double>>> stencil_cache;
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < n; ++i) {
    for (std::size_t b = 0; b < breaks.size(); ++b) {
      const int y = i - breaks[b].first;
      if (y < 0 || y >= n) continue;
      const int first = std::clamp(y - kStencilWidth / 2, 0, n - kStencilWidth);
      auto it = stencil_cache.find(y - first);
      if (it == stencil_cache.end())
        it = stencil_cache.emplace(y - first, fd_weights_offsets(y - first, 0, kStencilWidth, top)).first;
      const auto& D = it->second;
      for (int s = 0; s < kStencilWidth; ++s) {
        double v = 0.0;
        double hp = 1.0;
        for (int a = 0; a <= top; ++a) {
          v += coef[b][a] * D[a][s] / hp;
          hp *= h;
        }
        if (v != 0.0) trip.emplace_back(i, first + s, v);
      }
    }
  }
  corr_.setFromTriplets(trip.begin(), trip.end());
}

std::vector<double> DiscreteOperator::apply(std::span<const double> u) const {
  const int n = grid_.size();
  require(static_cast<int>(u.size()) == n, ErrorKind::InvalidArgument, "grid function length mismatch");
  auto U = fft_.forward(u);
  for (std::size_t k = 0; k < U.size(); ++k) U[k] *= weights_hat_[k];
  std::vector<double> conv = fft_.inverse(U);
  conv.resize(n);
  Eigen::Map<const Eigen::VectorXd> uv(u.data(), n);
  Eigen::VectorXd cu = corr_ * uv;
  for (int i = 0; i < n; ++i) conv[i] += cu[i] - alpha_h_ * u[i];
  return conv;
}

Eigen::MatrixXd DiscreteOperator::dense() const {
  const int n = grid_.size();
  Eigen::MatrixXd A = corr_.toDense();
  for (int i = 0; i < n; ++i) {
    A(i, i) -= alpha_h_;
    for (int j = -reach_; j <= reach_; ++j) {
      const int col = i - j;
      if (col >= 0 && col < n) A(i, col) += weights_[j + reach_];
    }
  }
  return A;
}

GridFunction apply_L_grid(const GridFunction& u, const KernelSpec& spec) {
  DiscreteOperator op(u.grid, spec);
  return GridFunction{u.grid, op.apply(u.values)};
}

}  // namespace nlsmooth
