#pragma once

#include <limits>
#include <string>
#include <vector>

#include "nlsmooth/expr.hpp"
#include "nlsmooth/piecewise.hpp"

namespace nlsmooth {

enum class KernelFamily { TruncatedPower, PowerComplement, TruncatedGaussian, Bump, QuarticPolynomial };

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();
inline constexpr int kMaxPhiOrder = 6;

struct KernelSpec {
  KernelFamily family = KernelFamily::QuarticPolynomial;
  double delta = 1.0;
  double beta = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  int origin_singularity_order = kInfiniteOrder;
  int horizon_jump_order = kInfiniteOrder;
  // K on (0, delta) as an expression in its argument.
  ExprPtr profile;
};

KernelSpec make_kernel(KernelFamily family, double delta, double beta = 0.0);

std::string family_name(KernelFamily family);
// Accepts s, p, g, q, quartic (case-insensitive) and the long family names.
KernelFamily parse_family(const std::string& name);

double eval_kernel(const KernelSpec& spec, double x);
double alpha(const KernelSpec& spec);
// m(xi) = integral of K(z) (cos(xi z) - 1) over (-delta, delta).
double multiplier(const KernelSpec& spec, double xi);

// L applied to phi(k, 0): breakpoints {-delta, 0, delta}.
PiecewiseSmoothFunction L_phi(const KernelSpec& spec, int k);

// Highest smoothing level the kernel regularity supports.
int smoothing_budget(const KernelSpec& spec);

// Derivatives K^(n)(z), n = 0..order, of the profile at 0 < z <= delta (one-sided at delta).
std::vector<double> profile_derivatives(const KernelSpec& spec, double z, int order);

// Integral of z^j K(z) over (0, t) for 0 <= t <= delta, as an expression in t.
ExprPtr moment_antiderivative(const KernelSpec& spec, int j);

}  // namespace nlsmooth
