#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nlsmooth/error.hpp"
#include "nlsmooth/fixtures.hpp"
#include "nlsmooth/nonlocal_operator.hpp"
#include "nlsmooth/smoothing.hpp"

using namespace nlsmooth;

namespace {

double transcription_gap(const Fixture& fx, int samples) {
  double worst = 0.0;
  const double lo = fx.domain.lo, hi = fx.domain.hi;
  for (int i = 0; i < samples; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / samples;
    worst = std::max(worst, std::abs(apply_L_quadrature(*fx.u_exact, fx.spec, x) - fx.f(x)));
  }
  return worst;
}

}  // namespace

TEST(Fixtures, Parameters) {
  const auto e1 = fixture("ex1");
  EXPECT_EQ(e1.domain.lo, -8.0);
  EXPECT_EQ(e1.spec.delta, 1.6);
  EXPECT_EQ(e1.f(-3.2), 0.0);
  const auto e2 = fixture("2");
  EXPECT_EQ(e2.jumps, (std::vector<double>{-2.0, 4.0}));
  for (double x : {-0.39, 0.0, 1.1, 2.39}) EXPECT_EQ(e2.f(x), 0.0);
  EXPECT_THROW(fixture("ex2", 3.5), Error);
  EXPECT_FALSE(fixture("ex3").b.has_value());
  try {
    fixture("ex9");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFixture);
  }
}

TEST(Fixtures, TranscriptionMatchesQuadrature) {
  EXPECT_LE(transcription_gap(fixture("ex1"), 200), 1e-8);
  EXPECT_LE(transcription_gap(fixture("ex2"), 200), 1e-8);
}

TEST(Smoothing, ExampleOneCoefficientsAreOne) {
  const auto fx = fixture("ex1");
  const auto rec = smooth(fx.f, fx.spec, 4, fx.jumps);
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(rec.coefficient(0, k), 1.0, 1e-9) << k;
    EXPECT_LE(std::abs(jump_at(rec.source, 0.0, k).magnitude), 1e-10) << k;
  }
}

TEST(Smoothing, ExampleTwoLevelZero) {
  const auto fx = fixture("ex2");
  const auto rec = smooth(fx.f, fx.spec, 0, fx.jumps);
  EXPECT_NEAR(rec.coefficient(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(rec.coefficient(1, 0), 1.0, 1e-12);
  // coefficients equal the jumps of the manufactured solution
  const auto r4 = smooth(fx.f, fx.spec, 4, fx.jumps);
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(r4.coefficient(0, k), jump_at(*fx.u_exact, -2.0, k).magnitude, 1e-9) << k;
    EXPECT_NEAR(r4.coefficient(1, k), 1.0, 1e-9) << k;
  }
}

TEST(Smoothing, OrderOfLocationsIsIrrelevant) {
  const auto fx = fixture("ex2");
  const auto a = smooth(fx.f, fx.spec, 4, {-2.0, 4.0});
  const auto b = smooth(fx.f, fx.spec, 4, {4.0, -2.0});
  for (int k = 0; k <= 4; ++k) {
    EXPECT_EQ(a.coefficient(0, k), b.coefficient(1, k));
    EXPECT_EQ(a.coefficient(1, k), b.coefficient(0, k));
  }
}

TEST(Smoothing, SmoothSourceIsUntouched) {
  const auto f = PiecewiseSmoothFunction::smooth(apply(Func::Sin, variable()));
  const auto spec = make_kernel(KernelFamily::QuarticPolynomial, 1.0);
  const auto rec = smooth(f, spec, 1, {0.0});
  EXPECT_EQ(rec.coefficient(0, 0), 0.0);
  EXPECT_EQ(rec.coefficient(0, 1), 0.0);
  for (double x : {-0.5, 0.0, 0.7}) EXPECT_EQ(rec.source(x), f(x));
}

TEST(Smoothing, BudgetAndSingularJumps) {
  const auto s = make_kernel(KernelFamily::TruncatedPower, 0.5, 0.4);
  try {
    smooth(phi(0, 0.0), s, 1, {0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LevelExceedsKernelSmoothness);
  }
  PiecewiseSmoothFunction root({0.0}, {Piece{constant(0.0), {}, {}}, Piece{power(variable(), 0.5), 1, {}}});
  const auto q = make_kernel(KernelFamily::QuarticPolynomial, 1.0);
  try {
    smooth(root, q, 1, {0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularJump);
  }
}

TEST(Smoothing, ConstraintAndReconstruction) {
  const auto fx = fixture("ex1");
  const auto rec = smooth(fx.f, fx.spec, 4, fx.jumps);
  const auto bM = smoothed_constraint(*fx.b, rec);
  const double x = 8.8;
  EXPECT_NEAR(bM(x), std::exp(x) - (1 + x + x * x / 2 + x * x * x / 6 + x * x * x * x / 24), 1e-9);
  EXPECT_EQ(bM(-9.0), fx.b.value()(-9.0));

  const Grid g = Grid::make(-8.0, 8.0, 1.6, 41);
  GridFunction u{g, {}};
  for (double xi : g.nodes()) u.values.push_back(fx.u_exact.value()(xi));
  GridFunction um = u;
  for (std::size_t i = 0; i < um.values.size(); ++i) um.values[i] -= rec.correction(g.node(int(i)));
  const auto back = reconstruct(um, rec);
  for (std::size_t i = 0; i < u.values.size(); ++i)
    EXPECT_NEAR(back.values[i], u.values[i], 1e-13 * (1 + std::abs(u.values[i])));

  SmoothingRecord step;
  step.level = 0;
  step.locations = {0.0};
  step.coefficients = {{1.0}};
  GridFunction zero{g, std::vector<double>(g.size(), 0.0)};
  const auto s = reconstruct(zero, step);
  for (int i = 0; i < g.size(); ++i) EXPECT_EQ(s.values[i], g.node(i) >= 0.0 ? 1.0 : 0.0);
}
