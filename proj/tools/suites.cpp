#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cli.hpp"
#include "nlsmooth/analysis.hpp"
#include "nlsmooth/error.hpp"
#include "nlsmooth/nonlocal_operator.hpp"

namespace nlsmooth::cli {

namespace {

using Lines = std::vector<CheckLine>;

void add(Lines& out, const char* suite, std::string name, bool ok, std::string measured) {
  out.push_back({suite, std::move(name), ok, std::move(measured)});
}

Lines jump_relation() {
  Lines out;
  const auto quartic = make_kernel(KernelFamily::QuarticPolynomial, 1.6);
  const double a = alpha(quartic);
  {
    const auto r = verify_jump_relation(quartic, phi(0, 0.0), 0);
    add(out, "jump-relation", "step: [f]_0 = -alpha", r.max_deviation <= 1e-8,
        fmt::format("[f]_0 = {:.12g}, -alpha = {:.12g}", r.source_jumps[0], -a));
  }
  {
    const auto r = verify_jump_relation(quartic, phi(1, 0.0), 1);
    add(out, "jump-relation", "ramp: [f]_0 = 0 and [f']_0 = -alpha",
        std::abs(r.source_jumps[0]) <= 1e-8 && std::abs(r.source_jumps[1] + a) <= 1e-6 * a,
        fmt::format("[f]_0 = {:.3e}, [f']_0 = {:.12g}", r.source_jumps[0], r.source_jumps[1]));
  }
  {
    const auto fx = fixture("ex1");
    const auto r = verify_jump_relation(fx.spec, *fx.u_exact, 3);
    add(out, "jump-relation", "example 1 solution, orders 0..3", r.max_deviation <= 1e-6,
        fmt::format("max relative deviation {:.3e}", r.max_deviation));
  }
  {
    const auto q = make_kernel(KernelFamily::Bump, 0.6);
    const auto u = linear_combine({{1.0, phi(0, 0.0)},
                                   {-0.5, phi(1, 0.0)},
                                   {0.3, phi(2, 0.0)},
                                   {1.0, PiecewiseSmoothFunction::smooth(apply(Func::Sin, variable()))}});
    const auto r = verify_jump_relation(q, u, 4);
    double plain = 0.0;
    for (int k = 0; k <= 4; ++k) plain = std::max(plain, std::abs(r.predicted[k] + alpha(q) * r.solution_jumps[k]));
    add(out, "jump-relation", "bump kernel, orders 0..4, [f^(k)] = -alpha [u^(k)]",
        r.max_deviation <= 1e-3 && plain <= 1e-9 * alpha(q),
        fmt::format("max relative deviation {:.3e}", r.max_deviation));
  }
  return out;
}

Lines kernel_derivative() {
  Lines out;
  for (const auto& k : {make_kernel(KernelFamily::TruncatedGaussian, 0.6), make_kernel(KernelFamily::Bump, 0.6),
                        make_kernel(KernelFamily::QuarticPolynomial, 1.6)}) {
    const auto L = L_phi(k, 0);
    std::vector<double> errs;
    for (double h : {4e-3, 2e-3}) {
      double e = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double x = -1.3 * k.delta + 2.6 * k.delta * (i + 0.5) / 200;
        if (std::abs(x) < 2 * h || std::abs(std::abs(x) - k.delta) < 2 * h) continue;
        e = std::max(e, std::abs((L(x + h) - L(x - h)) / (2 * h) - eval_kernel(k, x)));
      }
      errs.push_back(e);
    }
    const double order = std::log2(errs[0] / errs[1]);
    add(out, "kernel-derivative", "(L phi_0)' = K, " + family_name(k.family), order >= 1.9,
        fmt::format("order {:.3f} (errors {:.3e}, {:.3e})", order, errs[0], errs[1]));
  }
  return out;
}

std::string sequence(const std::vector<BlowupSample>& s) {
  std::string out;
  for (const auto& x : s) out += fmt::format("{}{:.4g}", out.empty() ? "" : ", ", x.max_derivative);
  return out;
}

bool grows(const std::vector<BlowupSample>& s, double min_ratio) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i].max_derivative >= min_ratio * s[i - 1].max_derivative)) return false;
  return true;
}

Lines blowup() {
  Lines out;
  const Interval dom{-1.0, 1.0};
  const auto step = phi(0, 0.0);
  const auto s = blowup_probe(make_kernel(KernelFamily::TruncatedPower, 2.0, 0.8), step, 1, 3, dom, 81);
  add(out, "blowup", "S kernel (beta 0.8): max |u'| near the jump grows >= 1.5x per halving", grows(s, 1.5), sequence(s));
  const auto p = blowup_probe(make_kernel(KernelFamily::PowerComplement, 2.0, 0.2), step, 2, 3, dom, 81);
  add(out, "blowup", "P kernel (beta 0.2): max |u''| near the jump grows >= 1.5x per halving", grows(p, 1.5),
      sequence(p));
  const auto p1 = blowup_probe(make_kernel(KernelFamily::PowerComplement, 2.0, 0.8), step, 1, 3, dom, 81);
  const double r1 = p1.back().max_derivative / p1.front().max_derivative;
  add(out, "blowup", "P kernel (beta 0.8): max |u'| stays bounded (final/first <= 1.2)", r1 <= 1.2,
      sequence(p1) + fmt::format(" (final/first {:.3f})", r1));
  const auto q = blowup_probe(make_kernel(KernelFamily::QuarticPolynomial, 2.0), step, 1, 3, dom, 81);
  const double rq = q.back().max_derivative / q.front().max_derivative;
  add(out, "blowup", "quartic kernel: max |u'| stays bounded (final/first <= 1.2)", rq <= 1.2,
      sequence(q) + fmt::format(" (final/first {:.3f})", rq));
  return out;
}

Lines cascade() {
  Lines out;
  const auto g = make_kernel(KernelFamily::TruncatedGaussian, 0.4);
  SolveConfig cfg;
  cfg.backend = Backend::Dense;
  cfg.n_interior = 1153;
  const auto u = resolve(phi(0, 0.0), PiecewiseSmoothFunction::zero(), g, {-2.4, 2.4}, 0, {0.0}, cfg);
  const auto rep = cascade_scan(u, g, 1);
  double worst_control = 0.0;
  bool control_flagged = false;
  for (const auto& e : rep.entries) {
    if (e.control) {
      worst_control = std::max(worst_control, e.ratio);
      control_flagged = control_flagged || e.flagged;
    } else if (e.order == 1) {
      add(out, "cascade", fmt::format("G kernel, step source: order-1 jump at {:+.1f}", e.location),
          e.flagged && e.ratio >= rep.threshold, fmt::format("magnitude {:.4e}, ratio {:.4g}", e.magnitude, e.ratio));
    }
  }
  add(out, "cascade", "no control node flagged", !control_flagged, fmt::format("largest control ratio {:.3g}", worst_control));
  return out;
}

double printed_s(double x, double d, double b, double c) {
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return c / (1 - b) * (std::pow(d, 1 - b) - std::pow(-x, 1 - b));
  return c / (1 - b) * (std::pow(x, 1 - b) - std::pow(d, 1 - b));
}

double printed_p(double x, double d, double b, double c) {
  const double k2 = 3 * (3 + b) / (b * (1 + b) * std::pow(d, 3 + b));
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return c * (x + d) - k2 * (std::pow(d, 1 + b) - std::pow(-x, 1 + b));
  return c * (x - d) - k2 * (std::pow(x, 1 + b) - std::pow(d, 1 + b));
}

double printed_g(double x, double d, double c) {
  const double sp = std::sqrt(std::numbers::pi);
  if (x <= -d || x >= d) return 0.0;
  if (x < 0) return -d * sp * c / 2 * (std::erf(-x / d) - std::erf(1.0));
  return d * sp * c / 2 * (std::erf(x / d) - std::erf(1.0));
}

Lines closed_forms() {
  Lines out;
  const double d = 0.6, b = 0.4;
  const auto s = make_kernel(KernelFamily::TruncatedPower, d, b);
  const auto p = make_kernel(KernelFamily::PowerComplement, d, b);
  const auto g = make_kernel(KernelFamily::TruncatedGaussian, d);
  const auto Ls = L_phi(s, 0), Lp = L_phi(p, 0), Lg = L_phi(g, 0);
  double es = 0, ep = 0, eg = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = -1.5 * d + 3.0 * d * (i + 0.5) / 100;
    es = std::max(es, std::abs(Ls(x) - printed_s(x, d, b, s.c)));
    ep = std::max(ep, std::abs(Lp(x) - printed_p(x, d, b, p.c)));
    eg = std::max(eg, std::abs(Lg(x) - printed_g(x, d, g.c)));
  }
  add(out, "closed-forms", "L phi_0, S kernel, against the branch formula", es <= 1e-12, fmt::format("max gap {:.3e}", es));
  add(out, "closed-forms", "L phi_0, P kernel, against the branch formula", ep <= 1e-12, fmt::format("max gap {:.3e}", ep));
  add(out, "closed-forms", "L phi_0, G kernel, against the branch formula", eg <= 1e-12, fmt::format("max gap {:.3e}", eg));
  for (const auto& k : {s, p, g, make_kernel(KernelFamily::Bump, d), make_kernel(KernelFamily::QuarticPolynomial, 1.6)}) {
    double e = 0.0;
    for (int order = 0; order <= 2; ++order) {
      const auto L = L_phi(k, order);
      const auto ph = phi(order, 0.0);
      for (int i = 0; i < 50; ++i) {
        const double x = -1.4 * k.delta + 2.8 * k.delta * (i + 0.37) / 50;
        e = std::max(e, std::abs(L(x) - apply_L_quadrature(ph, k, x, {1e-12, 1e-13})));
      }
    }
    add(out, "closed-forms", "L phi_k (k <= 2) against quadrature, " + family_name(k.family), e <= 1e-8,
        fmt::format("max gap {:.3e}", e));
  }
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"jump-relation", "kernel-derivative", "blowup", "cascade", "closed-forms", "all"}; }

std::vector<CheckLine> run_suite(const std::string& suite) {
  if (suite == "jump-relation") return jump_relation();
  if (suite == "kernel-derivative") return kernel_derivative();
  if (suite == "blowup") return blowup();
  if (suite == "cascade") return cascade();
  if (suite == "closed-forms") return closed_forms();
  if (suite == "all") {
    std::vector<CheckLine> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  fail(ErrorKind::InvalidArgument, "unknown suite '" + suite + "'");
}

}  // namespace nlsmooth::cli
