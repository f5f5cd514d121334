#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nlsmooth/error.hpp"
#include "nlsmooth/kernel.hpp"
#include "nlsmooth/nonlocal_operator.hpp"
#include "nlsmooth/quadrature.hpp"

using namespace nlsmooth;

namespace {

std::vector<KernelSpec> all_families() {
  return {make_kernel(KernelFamily::TruncatedPower, 0.6, 0.4),
          make_kernel(KernelFamily::PowerComplement, 0.6, 0.4),
          make_kernel(KernelFamily::TruncatedGaussian, 0.6),
          make_kernel(KernelFamily::Bump, 0.6),
          make_kernel(KernelFamily::QuarticPolynomial, 1.6)};
}

}  // namespace

TEST(Kernel, PointValues) {
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  EXPECT_DOUBLE_EQ(eval_kernel(q, 0.0), 25.634765625);
  const auto s = make_kernel(KernelFamily::TruncatedPower, 0.6, 0.4);
  const double cs = 2.6 / std::pow(0.6, 2.6);
  EXPECT_NEAR(eval_kernel(s, 0.3), cs * std::pow(0.3, -0.4), 1e-12);
  EXPECT_THROW(eval_kernel(s, 0.0), Error);
  for (const auto& k : all_families()) EXPECT_EQ(eval_kernel(k, 2 * k.delta), 0.0);
}

TEST(Kernel, ValidatesParameters) {
  EXPECT_THROW(make_kernel(KernelFamily::TruncatedPower, 0.6, 1.0), Error);
  EXPECT_THROW(make_kernel(KernelFamily::PowerComplement, 0.6, 0.0), Error);
  EXPECT_THROW(make_kernel(KernelFamily::QuarticPolynomial, -1.0), Error);
  EXPECT_EQ(parse_family("Quartic"), KernelFamily::QuarticPolynomial);
  EXPECT_THROW(parse_family("cubic"), Error);
}

TEST(Kernel, SymmetryAndSupport) {
  std::mt19937 rng(7);
  for (const auto& k : all_families()) {
    std::uniform_real_distribution<double> dist(-2 * k.delta, 2 * k.delta);
    for (int i = 0; i < 10000; ++i) {
      const double x = dist(rng);
      if (x == 0.0) continue;
      const double v = eval_kernel(k, x);
      EXPECT_EQ(v, eval_kernel(k, -x));
      EXPECT_GE(v, 0.0);
      if (std::abs(x) >= k.delta) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(Kernel, AlphaMatchesQuadrature) {
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  EXPECT_DOUBLE_EQ(alpha(q), 16.40625);
  EXPECT_NEAR(alpha(make_kernel(KernelFamily::QuarticPolynomial, 3.2)), alpha(q) / 4, 1e-14);
  const auto s = make_kernel(KernelFamily::TruncatedPower, 0.6, 0.4);
  EXPECT_NEAR(alpha(s), 2 * s.c * std::pow(0.6, 0.6) / 0.6, 1e-12);
  for (const auto& k : all_families()) {
    auto f = [&](double z) { return eval_kernel(k, z); };
    const double num = 2.0 * integrate_endpoint_singular(f, 0.0, k.delta);
    EXPECT_NEAR(alpha(k), num, 1e-10 * alpha(k)) << family_name(k.family);
    // second moment normalization
    auto g = [&](double z) { return z * z * eval_kernel(k, z); };
    EXPECT_NEAR(2.0 * integrate_endpoint_singular(g, 0.0, k.delta), 2.0, 1e-10);
  }
}

TEST(Kernel, SmoothingBudgets) {
  const auto f = all_families();
  EXPECT_EQ(smoothing_budget(f[0]), 0);
  EXPECT_EQ(smoothing_budget(f[1]), 1);
  EXPECT_EQ(smoothing_budget(f[2]), 0);
  EXPECT_EQ(smoothing_budget(f[3]), 6);
  EXPECT_EQ(smoothing_budget(f[4]), 4);
}

TEST(Kernel, MultiplierProperties) {
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  for (double xi : {std::numbers::pi / 8, 0.05, 1.0, 1.3, 3.0, 17.0}) {
    auto f = [&](double z) { return eval_kernel(q, z) * (std::cos(xi * z) - 1.0); };
    const double quad = 2.0 * integrate(f, 0.0, 1.6, {1e-15, 1e-15});
    EXPECT_NEAR(multiplier(q, xi), quad, 1e-10) << xi;
  }
  for (const auto& k : all_families()) {
    EXPECT_EQ(multiplier(k, 0.0), 0.0);
    for (int e = -3; e <= 3; ++e) {
      const double xi = std::pow(10.0, e);
      const double m = multiplier(k, xi);
      EXPECT_EQ(m, multiplier(k, -xi));
      EXPECT_LT(m, 0.0);
      EXPECT_GE(m, -2 * alpha(k) - 1e-12);
    }
  }
}

TEST(Kernel, PrintedClosedFormsAtOrderZero) {
  const double d = 0.6, b = 0.4;
  const auto s = make_kernel(KernelFamily::TruncatedPower, d, b);
  const auto p = make_kernel(KernelFamily::PowerComplement, d, b);
  const auto g = make_kernel(KernelFamily::TruncatedGaussian, d);
  const auto Ls = L_phi(s, 0), Lp = L_phi(p, 0), Lg = L_phi(g, 0);
  const double cs = s.c, cp = p.c, cg = g.c;
  const double sp = std::sqrt(std::numbers::pi);
  auto printed_s = [&](double x) {
    if (x <= -d) return 0.0;
    if (x < 0) return cs / (1 - b) * (std::pow(d, 1 - b) - std::pow(-x, 1 - b));
    if (x < d) return cs / (1 - b) * (std::pow(x, 1 - b) - std::pow(d, 1 - b));
    return 0.0;
  };
  auto printed_p = [&](double x) {
    const double k2 = 3 * (3 + b) / (b * (1 + b) * std::pow(d, 3 + b));
    if (x <= -d) return 0.0;
    if (x < 0) return cp * (x + d) - k2 * (std::pow(d, 1 + b) - std::pow(-x, 1 + b));
    if (x < d) return cp * (x - d) - k2 * (std::pow(x, 1 + b) - std::pow(d, 1 + b));
    return 0.0;
  };
  auto printed_g = [&](double x) {
    if (x <= -d) return 0.0;
    if (x < 0) return -d * sp * cg / 2 * (std::erf(-x / d) - std::erf(1.0));
    if (x < d) return d * sp * cg / 2 * (std::erf(x / d) - std::erf(1.0));
    return 0.0;
  };
  for (int i = 0; i < 100; ++i) {
    const double x = -1.5 * d + 3.0 * d * (i + 0.5) / 100;
    EXPECT_NEAR(Ls(x), printed_s(x), 1e-12) << x;
    EXPECT_NEAR(Lp(x), printed_p(x), 1e-12) << x;
    EXPECT_NEAR(Lg(x), printed_g(x), 1e-12) << x;
  }
}

TEST(Kernel, LphiMatchesQuadratureOracle) {
  for (const auto& k : all_families()) {
    for (int order = 0; order <= 2; ++order) {
      const auto L = L_phi(k, order);
      const auto ph = phi(order, 0.0);
      for (int i = 0; i < 50; ++i) {
        const double x = -1.4 * k.delta + 2.8 * k.delta * (i + 0.37) / 50;
        EXPECT_NEAR(L(x), apply_L_quadrature(ph, k, x, {1e-12, 1e-13}), 1e-8)
            << family_name(k.family) << " k=" << order << " x=" << x;
      }
    }
  }
}

TEST(Kernel, LphiVanishesOutsideOnTheLeftAndAtHorizon) {
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  const auto L0 = L_phi(q, 0);
  EXPECT_NEAR(L0(-1.6), 0.0, 1e-13);
  EXPECT_NEAR(L0(1.6), 0.0, 1e-13);
  EXPECT_EQ(L0(-3.0), 0.0);
  EXPECT_THROW(L_phi(q, 7), Error);
}

TEST(Kernel, DerivativeChainForQuartic) {
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  for (int k = 0; k <= 4; ++k) {
    const auto a = L_phi(q, k + 1);
    const auto b = L_phi(q, k);
    for (double x : {-2.0, -1.1, -0.3, 0.2, 0.9, 1.7, 4.0})
      EXPECT_NEAR(eval(a, 1, x), eval(b, 0, x), 1e-11 * (1 + std::abs(eval(b, 0, x)))) << k << " " << x;
  }
}

TEST(Kernel, SingularMetadataForPowerKernels) {
  const auto s = make_kernel(KernelFamily::TruncatedPower, 0.6, 0.4);
  const auto L = L_phi(s, 0);
  EXPECT_NO_THROW(jump_at(L, 0.0, 0));
  EXPECT_THROW(jump_at(L, 0.0, 1), Error);
  const auto p = make_kernel(KernelFamily::PowerComplement, 0.6, 0.4);
  EXPECT_NO_THROW(jump_at(L_phi(p, 0), 0.0, 1));
  EXPECT_THROW(jump_at(L_phi(p, 0), 0.0, 2), Error);
}

TEST(Kernel, LemmaTwoThreeFiniteDifferenceOrder) {
  for (const auto& k : {make_kernel(KernelFamily::TruncatedGaussian, 0.6), make_kernel(KernelFamily::Bump, 0.6),
                        make_kernel(KernelFamily::QuarticPolynomial, 1.6)}) {
    const auto L = L_phi(k, 0);
    std::vector<double> errs;
    for (double h : {4e-3, 2e-3}) {
      double e = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double x = -1.3 * k.delta + 2.6 * k.delta * (i + 0.5) / 200;
        if (std::abs(x) < 2 * h || std::abs(std::abs(x) - k.delta) < 2 * h) continue;
        const double fd = (L(x + h) - L(x - h)) / (2 * h);
        e = std::max(e, std::abs(fd - eval_kernel(k, x)));
      }
      errs.push_back(e);
    }
    EXPECT_GE(std::log2(errs[0] / errs[1]), 1.9) << family_name(k.family);
  }
}

TEST(Quadrature, CutsNextToTheEndpointsAreMerged) {
  const auto f = [](double x) { return std::cos(x); };
  const double b = 0.4;
  const double exact = std::sin(b) - std::sin(-b);
  for (const auto& cuts : {std::vector<double>{std::nextafter(b, 0.0)}, std::vector<double>{-b, std::nextafter(-b, 1.0)},
                           std::vector<double>{0.0, std::nextafter(0.0, 1.0), 0.1 * 4}})
    EXPECT_NEAR(integrate_pieces(f, -b, b, cuts, {1e-14, 1e-13}), exact, 1e-13);
}
