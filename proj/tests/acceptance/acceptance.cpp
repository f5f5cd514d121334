// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nlsmooth/analysis.hpp"
#include "nlsmooth/fixtures.hpp"
#include "nlsmooth/nonlocal_operator.hpp"
#include "nlsmooth/smoothing.hpp"
#include "nlsmooth/solver.hpp"

using namespace nlsmooth;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string level_name(int level) { return level == kNoSmoothing ? "none" : "M" + std::to_string(level); }

struct Band {
  int level;
  double lo;
  double hi;
};

// Orders at the last `pairs` consecutive pairs must all lie in the band.
Outcome order_pattern(const std::string& id, const std::vector<int>& ns, const std::vector<Band>& bands, int pairs,
                      double fine_error_cap) {
  SolveConfig cfg;
  const auto setup = prepare_study(fixture(id), cfg, 401);
  bool ok = true;
  std::string detail;
  for (const auto& band : bands) {
    const auto rep = convergence_study(setup, ns, band.level, cfg, 4);
    std::string orders;
    for (std::size_t i = rep.rows.size() - pairs; i < rep.rows.size(); ++i) {
      const double p = rep.rows[i].order.value_or(NAN);
      ok = ok && p >= band.lo && p <= band.hi;
      orders += fmt::format("{}{:.2f}", orders.empty() ? "" : "/", p);
    }
    detail += fmt::format("{}{} {}", detail.empty() ? "" : ", ", level_name(band.level), orders);
    if (band.level >= 3 && fine_error_cap > 0) {
      const double e = rep.rows.back().error;
      ok = ok && e <= fine_error_cap;
      detail += fmt::format(" (E{} {:.2e})", rep.rows.back().n, e);
    }
  }
  return {ok, detail};
}

constexpr double kOpen = 1e300;

Outcome criterion_1() {
  return order_pattern("ex1", {41, 61, 81, 101, 121},
                       {{kNoSmoothing, 0.8, 1.2}, {0, 1.8, 2.2}, {1, 3.5, 4.5}, {2, 3.5, 4.5}, {3, 6.0, kOpen}, {4, 6.0, kOpen}},
                       1, 1e-6);
}

Outcome criterion_2() {
  return order_pattern("ex2", {21, 41, 81, 121, 161},
                       {{kNoSmoothing, 0.8, 1.2}, {0, 1.8, 2.2}, {1, 3.5, 4.5}, {2, 3.5, 4.5}, {3, 5.0, kOpen}, {4, 5.0, kOpen}},
                       1, 1e-7);
}

Outcome criterion_3() {
  return order_pattern("ex3", {21, 41, 51, 81, 101},
                       {{kNoSmoothing, 0.8, 1.2}, {0, 1.8, 2.6}, {1, 3.8, 4.6}, {2, 3.8, kOpen}, {3, 5.5, kOpen}, {4, 5.5, kOpen}},
                       2, 0.0);
}

Outcome criterion_4() {
  const auto fx = fixture("ex1");
  const auto rec = smooth(fx.f, fx.spec, 4, fx.jumps);
  double coeff = 0.0, residual_jump = 0.0;
  for (int k = 0; k <= 4; ++k) {
    coeff = std::max(coeff, std::abs(rec.coefficient(0, k) - 1.0));
    residual_jump = std::max(residual_jump, std::abs(jump_at(rec.source, 0.0, k).magnitude));
  }
  return {coeff <= 1e-9 && residual_jump <= 1e-10,
          fmt::format("max |c_k - 1| {:.2e}, max remaining jump {:.2e}", coeff, residual_jump)};
}

Outcome criterion_5() {
  bool ok = true;
  std::string detail;
  for (const auto& k : {make_kernel(KernelFamily::TruncatedGaussian, 0.6), make_kernel(KernelFamily::Bump, 0.6),
                        make_kernel(KernelFamily::QuarticPolynomial, 1.6)}) {
    const auto L = L_phi(k, 0);
    double errs[2];
    int slot = 0;
    for (double h : {4e-3, 2e-3}) {
      double e = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double x = -1.3 * k.delta + 2.6 * k.delta * (i + 0.5) / 200;
        if (std::abs(x) < 2 * h || std::abs(std::abs(x) - k.delta) < 2 * h) continue;
        e = std::max(e, std::abs((L(x + h) - L(x - h)) / (2 * h) - eval_kernel(k, x)));
      }
      errs[slot++] = e;
    }
    const double order = std::log2(errs[0] / errs[1]);
    ok = ok && order >= 1.9;
    detail += fmt::format("{}{} {:.3f}", detail.empty() ? "" : ", ", family_name(k.family), order);
  }
  return {ok, detail};
}

double branch_s(double x, double d, double b, double c) {
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return c / (1 - b) * (std::pow(d, 1 - b) - std::pow(-x, 1 - b));
  return c / (1 - b) * (std::pow(x, 1 - b) - std::pow(d, 1 - b));
}

double branch_p(double x, double d, double b, double c) {
  const double k2 = 3 * (3 + b) / (b * (1 + b) * std::pow(d, 3 + b));
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return c * (x + d) - k2 * (std::pow(d, 1 + b) - std::pow(-x, 1 + b));
  return c * (x - d) - k2 * (std::pow(x, 1 + b) - std::pow(d, 1 + b));
}

double branch_g(double x, double d, double c) {
  const double sp = std::sqrt(std::numbers::pi);
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return -d * sp * c / 2 * (std::erf(-x / d) - std::erf(1.0));
  return d * sp * c / 2 * (std::erf(x / d) - std::erf(1.0));
}

Outcome criterion_6() {
  const double d = 0.6, b = 0.4;
  const auto s = make_kernel(KernelFamily::TruncatedPower, d, b);
  const auto p = make_kernel(KernelFamily::PowerComplement, d, b);
  const auto g = make_kernel(KernelFamily::TruncatedGaussian, d);
  const auto Ls = L_phi(s, 0), Lp = L_phi(p, 0), Lg = L_phi(g, 0);
  double printed = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = -1.5 * d + 3.0 * d * (i + 0.5) / 100;
    printed = std::max({printed, std::abs(Ls(x) - branch_s(x, d, b, s.c)), std::abs(Lp(x) - branch_p(x, d, b, p.c)),
                        std::abs(Lg(x) - branch_g(x, d, g.c))});
  }
  double quad = 0.0;
  for (const auto& k : {s, p, g, make_kernel(KernelFamily::Bump, d), make_kernel(KernelFamily::QuarticPolynomial, 1.6)})
    for (int order = 0; order <= 2; ++order) {
      const auto L = L_phi(k, order);
      const auto ph = phi(order, 0.0);
      for (int i = 0; i < 50; ++i) {
        const double x = -1.4 * k.delta + 2.8 * k.delta * (i + 0.37) / 50;
        quad = std::max(quad, std::abs(L(x) - apply_L_quadrature(ph, k, x, {1e-12, 1e-13})));
      }
    }
  return {printed <= 1e-12 && quad <= 1e-8, fmt::format("branch formulas {:.2e}, quadrature {:.2e}", printed, quad)};
}

std::string maxima(const std::vector<BlowupSample>& s) {
  std::string out;
  for (const auto& x : s) out += fmt::format("{}{:.4g}", out.empty() ? "" : " ", x.max_derivative);
  return out;
}

Outcome criterion_7() {
  const Interval dom{-1.0, 1.0};
  const auto step = phi(0, 0.0);
  const auto s = blowup_probe(make_kernel(KernelFamily::TruncatedPower, 2.0, 0.8), step, 1, 3, dom, 81);
  const auto p = blowup_probe(make_kernel(KernelFamily::PowerComplement, 2.0, 0.2), step, 2, 3, dom, 81);
  const auto q = blowup_probe(make_kernel(KernelFamily::QuarticPolynomial, 2.0), step, 1, 3, dom, 81);
  auto grows = [](const std::vector<BlowupSample>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i].max_derivative >= 1.5 * v[i - 1].max_derivative)) return false;
    return v.size() == 4;
  };
  const double bounded = q.back().max_derivative / q.front().max_derivative;
  return {grows(s) && grows(p) && bounded <= 1.2,
          fmt::format("S u' [{}], P u'' [{}], quartic u' final/first {:.3f}", maxima(s), maxima(p), bounded)};
}

Outcome criterion_8() {
  const auto g = make_kernel(KernelFamily::TruncatedGaussian, 0.4);
  SolveConfig cfg;
  cfg.backend = Backend::Dense;
  cfg.n_interior = 1153;
  const auto u = resolve(phi(0, 0.0), PiecewiseSmoothFunction::zero(), g, {-2.4, 2.4}, 0, {0.0}, cfg);
  const auto rep = cascade_scan(u, g, 1);
  bool left = false, right = false, control_flagged = false;
  double worst_control = 0.0;
  std::string found;
  for (const auto& e : rep.entries) {
    if (e.control) {
      control_flagged = control_flagged || e.flagged;
      worst_control = std::max(worst_control, e.ratio);
    } else if (e.order == 1 && std::abs(std::abs(e.location) - g.delta) < 1e-12) {
      const bool hit = e.flagged && e.ratio >= 20.0;
      (e.location < 0 ? left : right) = hit;
      found += fmt::format("{}{:+.1f}: {:.3g}", found.empty() ? "" : ", ", e.location, e.ratio);
    }
  }
  return {left && right && !control_flagged,
          fmt::format("order-1 ratios {}; largest control ratio {:.3g}", found, worst_control)};
}

double max_gap(const DiscreteSolution& u, const PiecewiseSmoothFunction& exact) {
  double e = 0.0;
  for (int i = 0; i < u.grid.size(); ++i) e = std::max(e, std::abs(u.values[i] - exact(u.grid.node(i))));
  return e;
}

Outcome criterion_9() {
  const auto zero = PiecewiseSmoothFunction::zero();
  const auto shift = PiecewiseSmoothFunction::smooth(constant(-2.5));
  const auto line = PiecewiseSmoothFunction::smooth(0.75 * variable() + 0.5);
  double reproduced = 0.0;
  for (const auto& k : {make_kernel(KernelFamily::QuarticPolynomial, 0.5), make_kernel(KernelFamily::TruncatedPower, 0.5, 0.4),
                        make_kernel(KernelFamily::PowerComplement, 0.5, 0.4),
                        make_kernel(KernelFamily::TruncatedGaussian, 0.5), make_kernel(KernelFamily::Bump, 0.5)})
    for (Backend b : {Backend::Spectral, Backend::Dense}) {
      SolveConfig cfg;
      cfg.backend = b;
      cfg.n_interior = 41;
      for (const auto* exact : {&shift, &line})
        reproduced = std::max(reproduced, max_gap(solve_constrained(zero, *exact, k, {-1.0, 1.0}, cfg), *exact));
    }

  const auto fx = fixture("ex1");
  SolveConfig cfg;
  cfg.n_interior = 41;
  const auto s = resolve(fx.f, *fx.b, fx.spec, fx.domain, 4, fx.jumps, cfg);
  cfg.backend = Backend::Dense;
  const auto d = resolve(fx.f, *fx.b, fx.spec, fx.domain, 4, fx.jumps, cfg);
  double agree = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) agree = std::max(agree, std::abs(s.values[i] - d.values[i]));
  const double dense_error = max_gap(d, *fx.u_exact);
  return {reproduced <= 1e-10 && agree <= 10 * dense_error,
          fmt::format("constants/linears {:.2e}; backend gap {:.2e} vs dense error {:.2e}", reproduced, agree, dense_error)};
}

Outcome criterion_10() {
  std::string detail;
  bool ok = true;
  for (const char* id : {"ex1", "ex2"}) {
    const auto fx = fixture(id);
    double gap = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = fx.domain.lo + (fx.domain.hi - fx.domain.lo) * (i + 0.5) / 200;
      gap = std::max(gap, std::abs(apply_L_quadrature(*fx.u_exact, fx.spec, x) - fx.f(x)));
    }
    ok = ok && gap <= 1e-8;
    detail += fmt::format("{}{} {:.2e}", detail.empty() ? "" : ", ", id, gap);
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 order pattern, Example 1", criterion_1},
      {"2 order pattern, Example 2", criterion_2},
      {"3 order pattern, Example 3 (constructed constraint, N=401 reference)", criterion_3},
      {"4 smoothing coefficients and removed jumps, Example 1", criterion_4},
      {"5 derivative of L phi_0 equals the kernel", criterion_5},
      {"6 L phi_k against branch formulas and quadrature", criterion_6},
      {"7 derivative blow-up for S and P, bounded for quartic", criterion_7},
      {"8 order-1 jumps at the horizon for the G kernel", criterion_8},
      {"9 constants and linears; spectral against dense", criterion_9},
      {"10 manufactured sources against quadrature of the exact solutions", criterion_10},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << fmt::format("{}  criterion {}: {} [{:.2f} s]\n", o.passed ? "PASS" : "FAIL", name, o.detail, secs);
    failed += o.passed ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
