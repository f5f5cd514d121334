#include "nlsmooth/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/IterativeSolvers>
#include <spdlog/spdlog.h>

#include "nlsmooth/error.hpp"
#include "nlsmooth/fft.hpp"
#include "nlsmooth/nonlocal_operator.hpp"

namespace nlsmooth {
class ReducedOperator;
}

namespace Eigen::internal {
template <>
struct traits<nlsmooth::ReducedOperator> : public traits<Eigen::SparseMatrix<double>> {};
}  // namespace Eigen::internal

namespace nlsmooth {

// Matrix-free restriction of L_h to the unknowns, for Eigen's Krylov solvers.
class ReducedOperator : public Eigen::EigenBase<ReducedOperator> {
 public:
  using Scalar = double;
  using RealScalar = double;
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic, IsRowMajor = false };

  explicit ReducedOperator(const DiscreteOperator& op) : op_(op) {}

  Eigen::Index rows() const { return op_.grid().n_interior - 2; }
  Eigen::Index cols() const { return rows(); }

  template <typename Rhs>
  Eigen::Product<ReducedOperator, Rhs, Eigen::AliasFreeProduct> operator*(const Eigen::MatrixBase<Rhs>& x) const {
    return Eigen::Product<ReducedOperator, Rhs, Eigen::AliasFreeProduct>(*this, x.derived());
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const {
    const Grid& g = op_.grid();
    std::vector<double> full(g.size(), 0.0);
    for (Eigen::Index j = 0; j < v.size(); ++j) full[g.first_unknown() + j] = v[j];
    const auto out = op_.apply(full);
    Eigen::VectorXd r(v.size());
    for (Eigen::Index j = 0; j < v.size(); ++j) r[j] = out[g.first_unknown() + j];
    return r;
  }

 private:
  const DiscreteOperator& op_;
};

}  // namespace nlsmooth

namespace Eigen::internal {
template <typename Rhs>
struct generic_product_impl<nlsmooth::ReducedOperator, Rhs, SparseShape, DenseShape, GemvProduct>
    : generic_product_impl_base<nlsmooth::ReducedOperator, Rhs,
                                generic_product_impl<nlsmooth::ReducedOperator, Rhs>> {
  using Scalar = typename Product<nlsmooth::ReducedOperator, Rhs>::Scalar;
  template <typename Dest>
  static void scaleAndAddTo(Dest& dst, const nlsmooth::ReducedOperator& lhs, const Rhs& rhs, const Scalar& alpha) {
    dst.noalias() += alpha * lhs.apply(rhs);
  }
};
}  // namespace Eigen::internal

namespace nlsmooth {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double hermite_bump(double t) {
  const double s = t * (1.0 - t);
  return std::pow(s, 7);
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Monomial coefficients of the degree 2q+1 polynomial on [0, 1] with prescribed derivatives
// (already scaled to t) at both ends.
std::vector<double> hermite_coefficients(const std::vector<double>& left, const std::vector<double>& right) {
  const int q = static_cast<int>(left.size()) - 1;
  const int n = 2 * q + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd r(n);
  for (int k = 0; k <= q; ++k) {
    // d^k/dt^k t^m = m!/(m-k)! t^(m-k)
    A(k, k) = factorial(k);
    for (int m = k; m < n; ++m) A(q + 1 + k, m) = factorial(m) / factorial(m - k);
    r[k] = left[k];
    r[q + 1 + k] = right[k];
  }
  const Eigen::VectorXd c = A.fullPivLu().solve(r);
  return {c.data(), c.data() + n};
}

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

constexpr int kBlendOrder = 6;

}  // namespace

std::string backend_name(Backend b) { return b == Backend::Dense ? "dense" : "spectral"; }

Backend parse_backend(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  if (name == "spectral" || name == "fft") return Backend::Spectral;
  if (name == "dense") return Backend::Dense;
  fail(ErrorKind::InvalidArgument, "unknown backend '" + raw + "' (expected spectral or dense)");
}

void SolveConfig::validate() const {
  require(n_interior >= 5, ErrorKind::InvalidArgument, "need at least 5 grid points in the domain");
  require(krylov_tol > 0.0, ErrorKind::InvalidArgument, "krylov tolerance must be positive");
  require(krylov_max_iter > 0, ErrorKind::InvalidArgument, "krylov iteration cap must be positive");
}

double discrete_residual(const DiscreteSolution& u, const PiecewiseSmoothFunction& f,
                         const KernelSpec& spec) {
  const DiscreteOperator op(u.grid, spec);
  const auto Lu = op.apply(u.values);
  double r = 0.0;
  for (int i = u.grid.first_unknown(); i <= u.grid.last_unknown(); ++i)
    r = std::max(r, std::abs(Lu[i] - f(u.grid.node(i))));
  return r;
}

DiscreteSolution solve_constrained(const PiecewiseSmoothFunction& f, const PiecewiseSmoothFunction& b,
                                   const KernelSpec& spec, Interval domain, const SolveConfig& cfg) {
  cfg.validate();
  const Grid g = Grid::make(domain.lo, domain.hi, spec.delta, cfg.n_interior);
  const DiscreteOperator op(g, spec, cfg.embedding_length);
  const int n = g.size();
  const int first = g.first_unknown();
  const int m = g.n_interior - 2;

  std::vector<double> u(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (!g.is_unknown(i)) u[i] = b(g.node(i));
  std::vector<double> fv(m);
  for (int j = 0; j < m; ++j) fv[j] = f(g.node(first + j));
  const auto Lb = op.apply(u);
  Eigen::VectorXd rhs(m);
  for (int j = 0; j < m; ++j) rhs[j] = fv[j] - Lb[first + j];
  for (int j = 0; j < m; ++j)
    require(std::isfinite(rhs[j]), ErrorKind::InvalidArgument, "non-finite source or constraint value");

  double scale = max_abs(fv);
  for (int j = 0; j < m; ++j) scale = std::max(scale, std::abs(rhs[j]));
  const double bound = cfg.krylov_tol * scale;

  Eigen::VectorXd x;
  if (cfg.backend == Backend::Dense) {
    const Eigen::MatrixXd A = op.dense().block(first, first, m, m);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    if (!(lu.rcond() > 1e-14)) fail(ErrorKind::SingularSystem, "collocation matrix is numerically singular");
    x = lu.solve(rhs);
  } else {
    const ReducedOperator A(op);
    Eigen::GMRES<ReducedOperator, Eigen::IdentityPreconditioner> gmres;
    gmres.set_restart(std::min(cfg.krylov_max_iter, m + 1));
    gmres.setMaxIterations(cfg.krylov_max_iter);
    gmres.setTolerance(0.1 * cfg.krylov_tol);
    gmres.compute(A);
    x = gmres.solve(rhs);
    spdlog::debug("gmres: {} iterations, estimated error {}", gmres.iterations(), gmres.error());
  }
  for (int j = 0; j < m; ++j) u[first + j] = x[j];

  DiscreteSolution sol{g, std::move(u), kNoSmoothing, cfg.backend, 0.0, bound};
  const auto Lu = op.apply(sol.values);
  for (int j = 0; j < m; ++j) sol.residual = std::max(sol.residual, std::abs(Lu[first + j] - fv[j]));
  if (!(sol.residual <= bound)) {
    const std::string msg = "residual " + std::to_string(sol.residual) + " above " + std::to_string(bound);
    fail(cfg.backend == Backend::Dense ? ErrorKind::SingularSystem : ErrorKind::KrylovStall, msg);
  }
  return sol;
}

TorusSolution solve_torus(const std::vector<double>& f, double period, const KernelSpec& spec) {
  require(!f.empty(), ErrorKind::InvalidArgument, "empty periodic source");
  require(period > 0.0, ErrorKind::InvalidArgument, "period must be positive");
  const std::size_t n = f.size();
  const RealFft fft(n);
  auto F = fft.forward(f);
  TorusSolution out;
  out.removed_mean = F[0].real() / static_cast<double>(n);
  F[0] = 0.0;
  const double a = alpha(spec);
  for (std::size_t k = 1; k < F.size(); ++k) {
    const double xi = 2.0 * std::numbers::pi * static_cast<double>(k) / period;
    const double m = multiplier(spec, xi);
    if (std::abs(m) < 1e-14 * a)
      fail(ErrorKind::NearZeroMultiplier, "multiplier vanishes at xi = " + std::to_string(xi));
    F[k] /= m;
  }
  out.values = fft.inverse(F);
  return out;
}

CompatibleConstraint construct_compatible_constraint(const PiecewiseSmoothFunction& f, const KernelSpec& spec,
                                                     int level, Interval domain,
                                                     std::optional<std::vector<double>> locations,
                                                     int resolution) {
  require(level >= 0, ErrorKind::InvalidArgument, "compatible constraint needs a smoothing level >= 0");
  require(resolution >= 4, ErrorKind::InvalidArgument, "torus resolution too small");
  const double a1 = domain.lo, a2 = domain.hi, d = spec.delta;
  std::vector<double> locs;
  if (locations) {
    locs = *locations;
  } else {
    for (double p : f.breakpoints())
      if (p > a1 && p < a2) locs.push_back(p);
  }

  CompatibleConstraint out;
  out.record = smooth(f, spec, level, locs);
  const auto& fM = out.record.source;

  const double h = (a2 - a1) / resolution;
  const double ratio = d / h;
  const int collar = static_cast<int>(std::lround(ratio));
  require(std::abs(ratio - collar) < 1e-9 * std::max(1.0, ratio), ErrorKind::InvalidArgument,
          "horizon must be a whole number of torus spacings");
  const int n = resolution + 4 * collar;
  const double period = n * h;
  auto node = [&](int j) { return a1 + (static_cast<double>(j - 2 * collar) * (a2 - a1)) / resolution; };

  // f_M on [a1 - d, a2 + d]; a Hermite blend across the remaining gap of width 2d.
  const double lo = a1 - d, hi = a2 + d, gap = 2.0 * d;
  std::vector<double> left(kBlendOrder + 1), right(kBlendOrder + 1);
  for (int k = 0; k <= kBlendOrder; ++k) {
    left[k] = fM.limit(hi, k, false) * std::pow(gap, k);
    right[k] = fM.limit(lo, k, true) * std::pow(gap, k);
  }
  const auto blend = hermite_coefficients(left, right);

  std::vector<double> src(n), bump(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double x = node(j);
    if (x >= lo && x <= hi) {
      src[j] = fM(x);
    } else {
      const double t = ((x < lo ? x + period : x) - hi) / gap;
      src[j] = horner(blend, t);
      bump[j] = hermite_bump(t);
    }
  }
  double sum = 0.0, bump_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    sum += src[j];
    bump_sum += bump[j];
  }
  const double gamma = -sum / bump_sum;
  for (int j = 0; j < n; ++j) src[j] += gamma * bump[j];

  const auto w = solve_torus(src, period, spec);
  out.removed_mean = w.removed_mean;
  out.smoothed_solution = w.values;
  out.nodes.resize(n);
  for (int j = 0; j < n; ++j) out.nodes[j] = node(j);

  const auto interp = nodal(node(0), h, w.values, level + 1);
  const auto window = PiecewiseSmoothFunction::smooth(interp).with_support({node(0), node(n - 1)});
  out.b = linear_combine({{1.0, window}, {1.0, out.record.correction_function()}});
  return out;
}

DiscreteSolution resolve(const PiecewiseSmoothFunction& f, const PiecewiseSmoothFunction& b,
                         const KernelSpec& spec, Interval domain, int level,
                         const std::vector<double>& locations, const SolveConfig& cfg) {
  const auto rec = smooth(f, spec, level, locations);
  const auto bM = smoothed_constraint(b, rec);
  DiscreteSolution sol = solve_constrained(rec.source, bM, spec, domain, cfg);
  sol.level = level;
  const auto full = reconstruct(sol.as_grid_function(), rec);
  sol.values = full.values;
  for (int i = 0; i < sol.grid.size(); ++i)
    if (!sol.grid.is_unknown(i)) sol.values[i] = b(sol.grid.node(i));
  return sol;
}

}  // namespace nlsmooth
