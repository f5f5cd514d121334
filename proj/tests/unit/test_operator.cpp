#include <cmath>

#include <gtest/gtest.h>

#include "nlsmooth/error.hpp"
#include "nlsmooth/nonlocal_operator.hpp"

using namespace nlsmooth;

namespace {

const Interval kDomain{-2.0, 2.0};

GridFunction sampled(const PiecewiseSmoothFunction& u, const Grid& g) {
  return GridFunction{g, sample(u, g.nodes())};
}

// max |L_h u - L u| over the nodes of the domain
double oracle_gap(const KernelSpec& spec, const PiecewiseSmoothFunction& u, int n) {
  const Grid g = Grid::make(kDomain.lo, kDomain.hi, spec.delta, n);
  const auto Lu = apply_L_grid(sampled(u, g), spec);
  double e = 0.0;
  for (int i = g.collar; i < g.collar + g.n_interior; ++i)
    e = std::max(e, std::abs(Lu.values[i] - apply_L_quadrature(u, spec, g.node(i), {1e-13, 1e-13})));
  return e;
}

PiecewiseSmoothFunction gaussian() {
  const ExprPtr x = variable();
  return PiecewiseSmoothFunction::smooth(apply(Func::Exp, -1.0 * int_power(x, 2)));
}

}  // namespace

TEST(Operator, ProductRuleConvergesAtSecondOrder) {
  for (const auto& spec : {make_kernel(KernelFamily::TruncatedPower, 0.5, 0.4),
                           make_kernel(KernelFamily::PowerComplement, 0.5, 0.4)}) {
    const double coarse = oracle_gap(spec, gaussian(), 41);
    const double fine = oracle_gap(spec, gaussian(), 81);
    EXPECT_GE(std::log2(coarse / fine), 1.9) << family_name(spec.family) << " " << coarse << " " << fine;
  }
}

TEST(Operator, CorrectedRuleIsNearlyExactOnSmoothData) {
  for (const auto& spec : {make_kernel(KernelFamily::QuarticPolynomial, 0.5),
                           make_kernel(KernelFamily::TruncatedGaussian, 0.5),
                           make_kernel(KernelFamily::Bump, 0.5)}) {
    // the bump is steep near the horizon and needs the finer grid
    const double coarse = oracle_gap(spec, gaussian(), 161);
    const double fine = oracle_gap(spec, gaussian(), 321);
    EXPECT_LE(fine, 1e-7) << family_name(spec.family);
    EXPECT_LE(fine, std::max(coarse, 1e-13)) << family_name(spec.family);
  }
}

TEST(Operator, ConstantsAndLinearsAreAnnihilated) {
  const ExprPtr x = variable();
  for (const auto& spec : {make_kernel(KernelFamily::QuarticPolynomial, 0.5),
                           make_kernel(KernelFamily::TruncatedPower, 0.5, 0.4),
                           make_kernel(KernelFamily::PowerComplement, 0.5, 0.4),
                           make_kernel(KernelFamily::TruncatedGaussian, 0.5),
                           make_kernel(KernelFamily::Bump, 0.5)}) {
    const Grid g = Grid::make(kDomain.lo, kDomain.hi, spec.delta, 41);
    for (const auto& u : {PiecewiseSmoothFunction::smooth(constant(3.0)),
                          PiecewiseSmoothFunction::smooth(2.0 * x - constant(1.0))}) {
      const auto Lu = apply_L_grid(sampled(u, g), spec);
      for (int i = g.collar; i < g.collar + g.n_interior; ++i)
        EXPECT_NEAR(Lu.values[i], 0.0, 1e-10) << family_name(spec.family) << " " << g.node(i);
    }
  }
}

TEST(Operator, IsLinear) {
  const auto spec = make_kernel(KernelFamily::QuarticPolynomial, 0.5);
  const Grid g = Grid::make(kDomain.lo, kDomain.hi, spec.delta, 61);
  const DiscreteOperator op(g, spec);
  std::vector<double> u(g.size()), v(g.size()), w(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    u[i] = std::sin(3 * x) + (x > 0.3 ? 1.0 : 0.0);
    v[i] = x * x * x - std::cos(x);
    w[i] = 2.5 * u[i] - 0.75 * v[i];
  }
  const auto Lu = op.apply(u), Lv = op.apply(v), Lw = op.apply(w);
  double scale = 0.0;
  for (double t : Lw) scale = std::max(scale, std::abs(t));
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(Lw[i], 2.5 * Lu[i] - 0.75 * Lv[i], 1e-12 * scale);
}

TEST(Operator, DenseMatchesMatrixFree) {
  const auto spec = make_kernel(KernelFamily::Bump, 0.5);
  const Grid g = Grid::make(kDomain.lo, kDomain.hi, spec.delta, 41);
  const DiscreteOperator op(g, spec);
  std::vector<double> u(g.size());
  for (int i = 0; i < g.size(); ++i) u[i] = std::exp(g.node(i)) * (i % 3);
  const auto a = op.apply(u);
  const Eigen::VectorXd b = op.dense() * Eigen::Map<const Eigen::VectorXd>(u.data(), g.size());
  for (int i = 0; i < g.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-11);
}

TEST(Operator, JumpIsInheritedWithFactorMinusAlpha) {
  for (const auto& spec : {make_kernel(KernelFamily::QuarticPolynomial, 0.5),
                           make_kernel(KernelFamily::TruncatedGaussian, 0.5),
                           make_kernel(KernelFamily::Bump, 0.5)}) {
    const auto L0 = L_phi(spec, 0);
    EXPECT_NEAR(jump_at(L0, 0.0, 0).magnitude, -alpha(spec), 1e-8);
    const double below = apply_L_quadrature(phi(0, 0.0), spec, -1e-9, {1e-14, 1e-14});
    const double above = apply_L_quadrature(phi(0, 0.0), spec, 0.0, {1e-14, 1e-14});
    EXPECT_NEAR(above - below, -alpha(spec), 1e-6 * alpha(spec));
  }
}

TEST(Operator, SampledRampMatchesClosedForm) {
  const auto spec = make_kernel(KernelFamily::QuarticPolynomial, 0.5);
  const auto exact = L_phi(spec, 1);
  std::vector<double> errs;
  for (int n : {81, 161}) {
    const Grid g = Grid::make(kDomain.lo, kDomain.hi, spec.delta, n);
    const auto Lu = apply_L_grid(sampled(phi(1, 0.0), g), spec);
    double e = 0.0;
    for (int i = g.collar; i < g.collar + g.n_interior; ++i)
      e = std::max(e, std::abs(Lu.values[i] - exact(g.node(i))));
    errs.push_back(e);
  }
  EXPECT_LE(errs[1], 1e-3 * alpha(spec));
  EXPECT_GE(std::log2(errs[0] / errs[1]), 1.9) << errs[0] << " " << errs[1];
}

TEST(Operator, RejectsMismatchedInputs) {
  const auto spec = make_kernel(KernelFamily::QuarticPolynomial, 0.5);
  const Grid g = Grid::make(kDomain.lo, kDomain.hi, 0.4, 41);
  EXPECT_THROW(DiscreteOperator(g, spec), Error);
  const Grid ok = Grid::make(kDomain.lo, kDomain.hi, 0.5, 41);
  const DiscreteOperator op(ok, spec);
  EXPECT_THROW(op.apply(std::vector<double>(3, 0.0)), Error);
  const auto s = make_kernel(KernelFamily::TruncatedPower, 0.5, 0.4);
  EXPECT_THROW(DiscreteOperator(ok, s, ConvolutionRule::CorrectedTrapezoid), Error);
}
