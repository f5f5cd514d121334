#include "nlsmooth/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlsmooth/error.hpp"
#include "nlsmooth/quadrature.hpp"

namespace nlsmooth {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

double bump_shape(double r) { return r >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - r * r)); }

double quartic_cosine_integral(double w) {
  // integral of (1-t)^4 cos(w t) over (0,1), minus its value 1/5 at w = 0
  if (std::abs(w) < 2.0) {
    double sum = 0.0;
    double wp = 1.0;
    for (int m = 1; m < 30; ++m) {
      wp *= w * w;
      const double term = (m % 2 ? -1.0 : 1.0) * wp * 24.0 / factorial(2 * m + 5);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double w2 = w * w;
  return 4.0 / w2 - 24.0 / (w2 * w2) + 24.0 * std::sin(w) / (w2 * w2 * w) - 0.2;
}

}  // namespace

std::string family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::TruncatedPower: return "s";
    case KernelFamily::PowerComplement: return "p";
    case KernelFamily::TruncatedGaussian: return "g";
    case KernelFamily::Bump: return "q";
    case KernelFamily::QuarticPolynomial: return "quartic";
  }
  return "?";
}

KernelFamily parse_family(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "s" || name == "truncatedpower" || name == "truncated-power") return KernelFamily::TruncatedPower;
  if (name == "p" || name == "powercomplement" || name == "power-complement") return KernelFamily::PowerComplement;
  if (name == "g" || name == "gaussian" || name == "truncatedgaussian") return KernelFamily::TruncatedGaussian;
  if (name == "q" || name == "bump") return KernelFamily::Bump;
  if (name == "quartic" || name == "k" || name == "quarticpolynomial") return KernelFamily::QuarticPolynomial;
  fail(ErrorKind::InvalidArgument, "unknown kernel family '" + raw + "'");
}

KernelSpec make_kernel(KernelFamily family, double delta, double beta) {
  require(std::isfinite(delta) && delta > 0, ErrorKind::InvalidArgument, "horizon must be positive");
  const bool needs_beta =
      family == KernelFamily::TruncatedPower || family == KernelFamily::PowerComplement;
  if (needs_beta)
    require(beta > 0 && beta < 1, ErrorKind::InvalidArgument, "beta must lie in (0, 1)");
  KernelSpec s;
  s.family = family;
  s.delta = delta;
  s.beta = needs_beta ? beta : 0.0;
  const double d = delta;
  const ExprPtr z = variable();
  switch (family) {
    case KernelFamily::TruncatedPower:
      s.c = (3.0 - beta) / std::pow(d, 3.0 - beta);
      s.alpha = 2.0 * s.c * std::pow(d, 1.0 - beta) / (1.0 - beta);
      s.origin_singularity_order = 0;
      s.horizon_jump_order = 0;
      s.profile = s.c * power(z, -beta);
      break;
    case KernelFamily::PowerComplement:
      s.c = 3.0 * (3.0 + beta) / (beta * d * d * d);
      s.alpha = 2.0 * s.c * d * beta / (1.0 + beta);
      s.origin_singularity_order = 1;
      s.horizon_jump_order = 1;
      s.profile = s.c * (constant(1.0) - (1.0 / std::pow(d, beta)) * power(z, beta));
      break;
    case KernelFamily::TruncatedGaussian: {
      const double e = std::numbers::e;
      s.c = 4.0 * e / (d * d * d * (e * std::sqrt(std::numbers::pi) * std::erf(1.0) - 2.0));
      s.alpha = s.c * d * std::sqrt(std::numbers::pi) * std::erf(1.0);
      s.origin_singularity_order = kInfiniteOrder;
      s.horizon_jump_order = 0;
      s.profile = s.c * apply(Func::Exp, (-1.0 / (d * d)) * int_power(z, 2));
      break;
    }
    case KernelFamily::Bump: {
      const QuadratureTolerance tol{1e-15, 1e-14};
      const double second = integrate([](double r) { return r * r * bump_shape(r); }, 0.0, 1.0, tol);
      const double zeroth = integrate(bump_shape, 0.0, 1.0, tol);
      s.c = 1.0 / (d * d * d * second);
      s.alpha = 2.0 * s.c * d * zeroth;
      s.origin_singularity_order = kInfiniteOrder;
      s.horizon_jump_order = kInfiniteOrder;
      s.profile =
          s.c * apply(Func::Exp, -1.0 * quotient(constant(1.0),
                                                 constant(1.0) - (1.0 / (d * d)) * int_power(z, 2)));
      break;
    }
    case KernelFamily::QuarticPolynomial:
      s.c = 105.0 / (d * d * d);
      s.alpha = 42.0 / (d * d);
      s.origin_singularity_order = kInfiniteOrder;
      s.horizon_jump_order = 4;
      s.profile = s.c * int_power(constant(1.0) - (1.0 / d) * z, 4);
      break;
  }
  return s;
}

double eval_kernel(const KernelSpec& spec, double x) {
  const double a = std::abs(x);
  if (a >= spec.delta) return 0.0;
  if (spec.family == KernelFamily::TruncatedPower && a == 0.0)
    fail(ErrorKind::SingularPoint, "truncated power kernel is singular at 0");
  if (spec.family == KernelFamily::Bump) return spec.c * bump_shape(a / spec.delta);
  return spec.profile->value(a);
}

double alpha(const KernelSpec& spec) { return spec.alpha; }

double multiplier(const KernelSpec& spec, double xi) {
  if (xi == 0.0) return 0.0;
  const double d = spec.delta;
  if (spec.family == KernelFamily::QuarticPolynomial)
    return 2.0 * spec.c * d * quartic_cosine_integral(xi * d);
  std::vector<double> cuts;
  const double period = std::numbers::pi / std::abs(xi);
  for (double t = period; t < d; t += period) cuts.push_back(t);
  auto f = [&](double z) { return eval_kernel(spec, z) * (std::cos(xi * z) - 1.0); };
  const bool singular = spec.family == KernelFamily::TruncatedPower;
  return 2.0 * integrate_pieces(f, 0.0, d, cuts, QuadratureTolerance{1e-14, 1e-13}, singular);
}

int smoothing_budget(const KernelSpec& spec) {
  return std::min({spec.origin_singularity_order, spec.horizon_jump_order, kMaxPhiOrder});
}

std::vector<double> profile_derivatives(const KernelSpec& spec, double z, int order) {
  std::vector<double> d(order + 1, 0.0);
  if (spec.family == KernelFamily::Bump && z >= spec.delta) return d;
  const Taylor t = spec.profile->eval(Taylor::variable(z, order));
  for (int n = 0; n <= order; ++n) d[n] = t.derivative(n);
  return d;
}

ExprPtr moment_antiderivative(const KernelSpec& spec, int j) {
  const double d = spec.delta;
  const double c = spec.c;
  const double b = spec.beta;
  const ExprPtr t = variable();
  switch (spec.family) {
    case KernelFamily::TruncatedPower:
      return (c / (j + 1 - b)) * power(t, j + 1 - b);
    case KernelFamily::PowerComplement:
      return linear({{c / (j + 1), int_power(t, j + 1)},
                     {-c / (std::pow(d, b) * (j + 1 + b)), power(t, j + 1 + b)}});
    case KernelFamily::TruncatedGaussian: {
      // A_j = -(c d^2/2) t^(j-1) e^(-t^2/d^2) + (d^2/2)(j-1) A_{j-2}
      const ExprPtr g = apply(Func::Exp, (-1.0 / (d * d)) * int_power(t, 2));
      if (j == 0) return (c * d * std::sqrt(std::numbers::pi) / 2.0) * apply(Func::Erf, (1.0 / d) * t);
      if (j == 1) return (c * d * d / 2.0) * (constant(1.0) - g);
      return linear({{-c * d * d / 2.0, int_power(t, j - 1) * g},
                     {d * d / 2.0 * (j - 1), moment_antiderivative(spec, j - 2)}});
    }
    case KernelFamily::Bump:
      return integral(int_power(t, j) * spec.profile, 0.0);
    case KernelFamily::QuarticPolynomial: {
      std::vector<double> coeffs(j + 6, 0.0);
      for (int i = 0; i <= 4; ++i)
        coeffs[i + j + 1] = c * binomial(4, i) * std::pow(-1.0 / d, i) / (i + j + 1);
      return polynomial(coeffs);
    }
  }
  return constant(0.0);
}

PiecewiseSmoothFunction L_phi(const KernelSpec& spec, int k) {
  if (k < 0 || k > kMaxPhiOrder)
    fail(ErrorKind::UnsupportedOrder, "L_phi implemented for orders 0.." + std::to_string(kMaxPhiOrder));
  const double d = spec.delta;
  const ExprPtr x = variable();
  const ExprPtr neg_x = -1.0 * x;
  std::vector<std::pair<double, ExprPtr>> left, middle, right;
  for (int j = 0; j <= k; ++j) {
    const ExprPtr a = moment_antiderivative(spec, j);
    const double full = a->value(d);
    const double w = 1.0 / (factorial(k - j) * factorial(j));
    const ExprPtr xp = int_power(x, k - j);
    // (-delta, 0): integral of z^j K over (-x, delta)
    left.emplace_back(w, xp * linear({{-1.0, substitute(a, -1.0, 0.0)}}, full));
    // (0, delta): integral over (-x, 0) plus (0, delta)
    middle.emplace_back(w, xp * linear({{j % 2 ? -1.0 : 1.0, a}}, full));
    const double tail = j % 2 ? 0.0 : 2.0 * full;
    if (j == 0)
      right.emplace_back(w * (tail - spec.alpha), xp);
    else if (tail != 0.0)
      right.emplace_back(w * tail, xp);
  }
  const ExprPtr phik = (1.0 / factorial(k)) * int_power(x, k);
  middle.emplace_back(-spec.alpha, phik);
  std::optional<int> at_origin;
  if (spec.family == KernelFamily::TruncatedPower) at_origin = k + 1;
  if (spec.family == KernelFamily::PowerComplement) at_origin = k + 2;
  std::vector<Piece> pieces{Piece{constant(0.0), {}, {}},
                            Piece{linear(std::move(left)), {}, at_origin},
                            Piece{linear(std::move(middle)), at_origin, {}},
                            Piece{linear(std::move(right)), {}, {}}};
  return PiecewiseSmoothFunction({-d, 0.0, d}, std::move(pieces));
}

}  // namespace nlsmooth
