#include "nlsmooth/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "nlsmooth/error.hpp"
#include "nlsmooth/nonlocal_operator.hpp"
#include "nlsmooth/stencil.hpp"

namespace nlsmooth {

namespace {

constexpr int kControlPoints = 10;
constexpr int kRingWidth = 8;
// Half width of the derivative stencils inside the discrete operator.
constexpr int kCorrectionHalfWidth = 6;
constexpr int kRelationStencil = 10;

double one_sided(const GridFunction& u, int index, int first, int count, int k) {
  // Derivative at node `index` from nodes first..first+count-1.
  const auto w = fd_weights_offsets(static_cast<double>(index - first), 0, count, k);
  double s = 0.0;
  for (int j = 0; j < count; ++j) s += w[k][j] * u.values[first + j];
  return s / std::pow(u.grid.h, k);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool near_multiple(double x, double origin, double step, double tol) {
  const double r = (x - origin) / step;
  return std::abs(r - std::round(r)) * step < tol;
}

template <typename F>
void parallel_for(int count, int jobs, F&& body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex m;
  std::vector<std::jthread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(m);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

double estimate_jump_fd(const GridFunction& u, double p, int k) {
  require(k >= 0 && k <= 4, ErrorKind::InvalidArgument, "jump estimates support orders 0..4");
  const int i = u.grid.index_of(p);
  require(i >= 0, ErrorKind::InvalidArgument, "jump location is not a grid node");
  const int count = k + 3;
  if (i - count < 0 || i + count > u.grid.size())
    fail(ErrorKind::InsufficientStencil, "need " + std::to_string(count) + " nodes on each side of the jump");
  const double right = one_sided(u, i, i, count, k);
  const double left = one_sided(u, i, i - count, count, k);
  return right - left;
}

std::vector<const CascadeEntry*> CascadeReport::flagged() const {
  std::vector<const CascadeEntry*> out;
  for (const auto& e : entries)
    if (e.flagged) out.push_back(&e);
  return out;
}

CascadeReport cascade_scan(const DiscreteSolution& u, const KernelSpec& spec, int kmax,
                           const std::vector<double>& extra, unsigned seed) {
  require(kmax >= 1, ErrorKind::InvalidArgument, "kmax must be at least 1");
  const Grid& g = u.grid;
  require(g.delta_aligned, ErrorKind::InvalidArgument, "cascade scan needs a grid-aligned horizon");
  const GridFunction gf = u.as_grid_function();
  const int top = std::min(kmax + 1, 4);
  const int reach = top + 3;
  const double d = spec.delta;

  std::vector<double> candidates;
  for (int k = 1; k <= kmax; ++k)
    for (double s : {-1.0, 1.0}) {
      const double p = s * k * d;
      if (p > g.a1 && p < g.a2) candidates.push_back(p);
    }
  candidates.insert(candidates.end(), extra.begin(), extra.end());

  // Each location is judged against the median estimate on a ring of nodes just outside its own stencil.
  const int inner = reach + kCorrectionHalfWidth + 2;
  const int width = kRingWidth;
  auto local_floor = [&](double p, int k) {
    const int ip = static_cast<int>(std::lround((p - g.node(0)) / g.h));
    std::vector<double> mags;
    for (int o = inner; o < inner + width; ++o)
      for (int s : {-1, 1}) {
        const int i = ip + s * o;
        if (i - (k + 3) < 0 || i + (k + 3) >= g.size()) continue;
        mags.push_back(std::abs(estimate_jump_fd(gf, g.node(i), k)));
      }
    require(mags.size() >= static_cast<std::size_t>(width), ErrorKind::InsufficientStencil,
            "not enough neighbours to estimate the noise floor");
    return median(mags);
  };

  const double clear = (2 * inner + width + 1.5) * g.h;
  std::vector<int> pool;
  for (int i = g.first_unknown() + reach; i <= g.last_unknown() - reach; ++i) {
    const double x = g.node(i);
    // The layer within one horizon of the domain ends carries the constraint's own structure.
    if (x < g.a1 + d + clear || x > g.a2 - d - clear) continue;
    if (near_multiple(x, 0.0, d, clear) || near_multiple(x, g.a1, d, clear) || near_multiple(x, g.a2, d, clear))
      continue;
    bool near_extra = false;
    for (double e : extra) near_extra = near_extra || std::abs(x - e) < clear;
    if (!near_extra) pool.push_back(i);
  }
  require(static_cast<int>(pool.size()) >= kControlPoints, ErrorKind::InsufficientStencil,
          "not enough control nodes away from multiples of the horizon");
  std::mt19937 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(kControlPoints);
  std::sort(pool.begin(), pool.end());

  CascadeReport rep;
  auto entry = [&](double p, int k, bool control) {
    const double m = estimate_jump_fd(gf, p, k);
    const double floor = local_floor(p, k);
    double r;
    if (floor > 0.0)
      r = std::abs(m) / floor;
    else
      r = m == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    rep.entries.push_back({p, k, m, r, r > rep.threshold, control});
  };
  for (int k = 0; k <= top; ++k) {
    for (double p : candidates) entry(p, k, false);
    for (int i : pool) entry(g.node(i), k, true);
  }
  return rep;
}

std::vector<BlowupSample> blowup_probe(const KernelSpec& spec, const PiecewiseSmoothFunction& f, int j,
                                       int refinements, Interval domain, int n0) {
  require(j >= 1 && j <= 3, ErrorKind::InvalidArgument, "blow-up probe supports derivative orders 1..3");
  require(refinements >= 0, ErrorKind::InvalidArgument, "refinement count must be non-negative");
  const int level = std::min(j - 1, smoothing_budget(spec));
  std::vector<BlowupSample> out;
  SolveConfig cfg;
  cfg.backend = Backend::Dense;
  for (int r = 0; r <= refinements; ++r) {
    cfg.n_interior = (n0 - 1) * (1 << r) + 1;
    const auto u = resolve(f, PiecewiseSmoothFunction::zero(), spec, domain, level, {0.0}, cfg);
    const GridFunction gf = u.as_grid_function();
    const int i0 = u.grid.index_of(0.0);
    require(i0 >= 0, ErrorKind::InvalidArgument, "the jump at 0 must be a grid node");
    const int count = j + 3;
    double m = 0.0;
    for (int s = 1; s <= 3; ++s) {
      m = std::max(m, std::abs(one_sided(gf, i0 + s, i0, count, j)));
      m = std::max(m, std::abs(one_sided(gf, i0 - s, i0 - count, count, j)));
    }
    out.push_back({u.grid.h, cfg.n_interior, m});
  }
  return out;
}

std::vector<std::optional<double>> observed_orders(const std::vector<int>& ns, const std::vector<double>& errors) {
  require(ns.size() == errors.size(), ErrorKind::InvalidArgument, "grid and error lists differ in length");
  std::vector<std::optional<double>> out(ns.size());
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (errors[i - 1] > 0.0 && errors[i] > 0.0 && ns[i] != ns[i - 1])
      out[i] = std::log(errors[i - 1] / errors[i]) / std::log(static_cast<double>(ns[i]) / ns[i - 1]);
  return out;
}

StudySetup prepare_study(const Fixture& fx, const SolveConfig& cfg, int reference_n) {
  StudySetup s;
  s.fixture = fx;
  s.reference_n = reference_n;
  const int level = std::min(4, smoothing_budget(fx.spec));
  if (fx.b) {
    s.constraint = *fx.b;
  } else {
    s.constraint = construct_compatible_constraint(fx.f, fx.spec, level, fx.domain, fx.jumps).b;
  }
  if (!fx.u_exact) {
    SolveConfig rc = cfg;
    rc.n_interior = reference_n;
    s.reference = resolve(fx.f, s.constraint, fx.spec, fx.domain, level, fx.jumps, rc);
  }
  return s;
}

ConvergenceReport convergence_study(const StudySetup& setup, const std::vector<int>& ns, int level,
                                    const SolveConfig& cfg, int jobs) {
  const Fixture& fx = setup.fixture;
  require(!ns.empty(), ErrorKind::InvalidArgument, "no grid sizes given");
  if (setup.reference)
    for (int n : ns)
      require(n >= 2 && (setup.reference_n - 1) % (n - 1) == 0, ErrorKind::InvalidArgument,
              "grid N=" + std::to_string(n) + " is not nested in the reference grid N=" +
                  std::to_string(setup.reference_n));

  std::vector<double> errors(ns.size());
  parallel_for(static_cast<int>(ns.size()), jobs, [&](int idx) {
    SolveConfig c = cfg;
    c.n_interior = ns[idx];
    const auto u = resolve(fx.f, setup.constraint, fx.spec, fx.domain, level, fx.jumps, c);
    double e = 0.0;
    if (setup.reference) {
      const auto& ref = *setup.reference;
      const int stride = (setup.reference_n - 1) / (ns[idx] - 1);
      for (int i = 0; i < u.grid.size(); ++i) {
        const int r = ref.grid.collar + (i - u.grid.collar) * stride;
        if (r >= 0 && r < ref.grid.size()) e = std::max(e, std::abs(u.values[i] - ref.values[r]));
      }
    } else {
      for (int i = 0; i < u.grid.size(); ++i)
        e = std::max(e, std::abs(u.values[i] - (*fx.u_exact)(u.grid.node(i))));
    }
    errors[idx] = e;
  });

  ConvergenceReport rep;
  rep.example = fx.id;
  rep.level = level;
  rep.backend = cfg.backend;
  if (setup.reference) rep.norm = "max over nodes shared with the N=" + std::to_string(setup.reference_n) + " reference";
  const auto orders = observed_orders(ns, errors);
  for (std::size_t i = 0; i < ns.size(); ++i) rep.rows.push_back({ns[i], errors[i], orders[i]});
  return rep;
}

JumpRelation verify_jump_relation(const KernelSpec& spec, const PiecewiseSmoothFunction& u, int kmax, double p,
                                  std::optional<double> h) {
  require(kmax >= 0 && kmax <= 4, ErrorKind::InvalidArgument, "jump relation supports orders 0..4");
  require(kmax <= smoothing_budget(spec), ErrorKind::LevelExceedsKernelSmoothness,
          "kernel is not smooth enough for this order");
  const double step = h.value_or(spec.delta / 64.0);
  const QuadratureTolerance tol{1e-14, 1e-14};
  std::vector<double> right(kRelationStencil), left(kRelationStencil);
  for (int i = 0; i < kRelationStencil; ++i) {
    right[i] = apply_L_quadrature(u, spec, p + i * step, tol);
    left[i] = apply_L_quadrature(u, spec, p - (i + 1) * step, tol);
  }
  const auto wr = fd_weights_offsets(0.0, 0, kRelationStencil, kmax);
  const auto wl = fd_weights_offsets(0.0, -kRelationStencil, kRelationStencil, kmax);
  const double a = alpha(spec);
  std::vector<PiecewiseSmoothFunction> images;
  for (int i = 0; i <= kmax; ++i) images.push_back(L_phi(spec, i));
  JumpRelation out;
  double scale = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    double r = 0.0, l = 0.0;
    for (int i = 0; i < kRelationStencil; ++i) {
      r += wr[k][i] * right[i];
      l += wl[k][i] * left[kRelationStencil - 1 - i];
    }
    out.source_jumps.push_back((r - l) / std::pow(step, k));
    out.solution_jumps.push_back(jump_at(u, p, k).magnitude);
    scale = std::max(scale, std::abs(out.solution_jumps.back()));
    double pred = 0.0;
    for (int i = 0; i <= k; ++i) pred += out.solution_jumps[i] * jump_at(images[i], 0.0, k).magnitude;
    out.predicted.push_back(pred);
  }
  require(scale > 0.0, ErrorKind::InvalidArgument, "u has no jump at the given location");
  for (int k = 0; k <= kmax; ++k) {
    const double dev = std::abs(out.source_jumps[k] - out.predicted[k]) / (a * scale);
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  return out;
}

}  // namespace nlsmooth
