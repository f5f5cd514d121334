#include "nlsmooth/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include "nlsmooth/error.hpp"

namespace nlsmooth {

namespace {

constexpr std::size_t kWorkspaceIntervals = 2000;

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct Workspace {
  Workspace() : w(gsl_integration_workspace_alloc(kWorkspaceIntervals)) {}
  ~Workspace() { gsl_integration_workspace_free(w); }
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  gsl_integration_workspace* w;
};

double trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

double run(const std::function<double(double)>& f, double a, double b, QuadratureTolerance tol,
           bool singular) {
  if (a == b) return 0.0;
  disable_gsl_abort();
  Workspace ws;
  gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0;
  double abserr = 0.0;
  const int status =
      singular ? gsl_integration_qags(&F, a, b, tol.abs, tol.rel, kWorkspaceIntervals, ws.w, &result, &abserr)
               : gsl_integration_qag(&F, a, b, tol.abs, tol.rel, kWorkspaceIntervals, GSL_INTEG_GAUSS31,
                                     ws.w, &result, &abserr);
  // Roundoff-limited results are accepted when the estimate is still near the target.
  const double target = std::max(tol.abs, tol.rel * std::abs(result));
  const bool ok = std::isfinite(result) &&
                  (status == GSL_SUCCESS || (status == GSL_EROUND && abserr <= 1e3 * target));
  if (!ok) {
    std::ostringstream os;
    os.precision(17);
    os << gsl_strerror(status) << "; error estimate " << abserr << " on [" << a << ", " << b << "]";
    fail(ErrorKind::QuadratureNonConvergence, os.str());
  }
  return result;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureTolerance tol) {
  return run(f, a, b, tol, false);
}

double integrate_endpoint_singular(const std::function<double(double)>& f, double a, double b,
                                   QuadratureTolerance tol) {
  return run(f, a, b, tol, true);
}

double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                        std::vector<double> cuts, QuadratureTolerance tol,
                        bool endpoint_singular) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  // Cuts closer than eps to a neighbour are merged.
  const double eps = 1e-12 * std::max({std::abs(a), std::abs(b), b - a});
  std::vector<double> pts{a};
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c > pts.back() + eps && c < b - eps) pts.push_back(c);
  pts.push_back(b);
  double total = 0.0;
  const QuadratureTolerance piece_tol{tol.abs / static_cast<double>(pts.size() - 1), tol.rel};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += run(f, pts[i], pts[i + 1], piece_tol, endpoint_singular);
  return sign * total;
}

}  // namespace nlsmooth
