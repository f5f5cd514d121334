#include "nlsmooth/smoothing.hpp"

#include "nlsmooth/error.hpp"

namespace nlsmooth {

namespace {

double phi_value(int k, double t) {
  if (t < 0.0) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= t / i;
  return v;
}

}  // namespace

double SmoothingRecord::correction(double x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < locations.size(); ++j)
    for (int k = 0; k <= level; ++k) s += coefficients[j][k] * phi_value(k, x - locations[j]);
  return s;
}

PiecewiseSmoothFunction SmoothingRecord::correction_function() const {
  std::vector<std::pair<double, PiecewiseSmoothFunction>> terms;
  for (std::size_t j = 0; j < locations.size(); ++j)
    for (int k = 0; k <= level; ++k)
      if (coefficients[j][k] != 0.0) terms.emplace_back(coefficients[j][k], phi(k, locations[j]));
  return linear_combine(terms);
}

SmoothingRecord smooth(const PiecewiseSmoothFunction& f, const KernelSpec& spec, int level,
                       const std::vector<double>& locations) {
  require(level >= kNoSmoothing, ErrorKind::InvalidArgument, "smoothing level must be >= 0");
  const int budget = smoothing_budget(spec);
  if (level > budget)
    fail(ErrorKind::LevelExceedsKernelSmoothness,
         "level " + std::to_string(level) + " exceeds the kernel's smoothing budget " +
             std::to_string(budget) + " (" + family_name(spec.family) + ")");

  SmoothingRecord rec;
  rec.level = level;
  rec.locations = locations;
  rec.spec = spec;
  rec.coefficients.assign(locations.size(), std::vector<double>(level + 1, 0.0));
  rec.source = f;
  const double a = alpha(spec);

  for (int k = 0; k <= level; ++k) {
    // All coefficients of one level come from the same f_{k-1}.
    std::vector<double> c(locations.size());
    for (std::size_t j = 0; j < locations.size(); ++j) {
      try {
        c[j] = -jump_at(rec.source, locations[j], k).magnitude / a;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnboundedLimit || e.kind() == ErrorKind::SingularPoint)
          fail(ErrorKind::SingularJump, "order-" + std::to_string(k) + " jump at " +
                                            std::to_string(locations[j]) + ": " + e.what());
        throw;
      }
    }
    std::vector<std::pair<double, PiecewiseSmoothFunction>> terms{{1.0, rec.source}};
    const auto carrier = L_phi(spec, k);
    for (std::size_t j = 0; j < locations.size(); ++j) {
      rec.coefficients[j][k] = c[j];
      if (c[j] != 0.0) terms.emplace_back(-c[j], shifted(carrier, locations[j]));
    }
    if (terms.size() > 1) rec.source = linear_combine(terms);
  }
  return rec;
}

PiecewiseSmoothFunction smoothed_constraint(const PiecewiseSmoothFunction& b,
                                            const SmoothingRecord& record) {
  const auto corr = record.correction_function();
  if (corr.breakpoints().empty() && corr(0.0) == 0.0) return b;
  return linear_combine({{1.0, b}, {-1.0, corr}});
}

GridFunction reconstruct(const GridFunction& u_smoothed, const SmoothingRecord& record) {
  GridFunction out = u_smoothed;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += record.correction(u_smoothed.grid.node(static_cast<int>(i)));
  return out;
}

}  // namespace nlsmooth
