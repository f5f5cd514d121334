#include "nlsmooth/fft.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include <fftw3.h>

namespace nlsmooth {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Buffer {
  explicit Buffer(std::size_t bytes) : p(fftw_malloc(bytes)) {}
  ~Buffer() { fftw_free(p); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* p;
};
}  // namespace

struct RealFft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

RealFft::RealFft(std::size_t n) : n_(n) {
  auto plans = std::make_shared<Plans>();
  Buffer r(sizeof(double) * n);
  Buffer c(sizeof(fftw_complex) * (n / 2 + 1));
  {
    std::lock_guard lock(planner_mutex());
    plans->fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), static_cast<double*>(r.p),
                                      static_cast<fftw_complex*>(c.p), FFTW_ESTIMATE);
    plans->inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), static_cast<fftw_complex*>(c.p),
                                      static_cast<double*>(r.p), FFTW_ESTIMATE);
  }
  plans_ = std::move(plans);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> x) const {
  Buffer r(sizeof(double) * n_);
  Buffer c(sizeof(fftw_complex) * (n_ / 2 + 1));
  auto* in = static_cast<double*>(r.p);
  std::fill(in, in + n_, 0.0);
  std::copy_n(x.begin(), std::min(x.size(), n_), in);
  fftw_execute_dft_r2c(plans_->fwd, in, static_cast<fftw_complex*>(c.p));
  std::vector<std::complex<double>> out(n_ / 2 + 1);
  std::memcpy(out.data(), c.p, sizeof(fftw_complex) * out.size());
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> X) const {
  Buffer r(sizeof(double) * n_);
  Buffer c(sizeof(fftw_complex) * (n_ / 2 + 1));
  std::memcpy(c.p, X.data(), sizeof(fftw_complex) * (n_ / 2 + 1));
  fftw_execute_dft_c2r(plans_->inv, static_cast<fftw_complex*>(c.p), static_cast<double*>(r.p));
  const auto* out = static_cast<const double*>(r.p);
  std::vector<double> v(out, out + n_);
  const double s = 1.0 / static_cast<double>(n_);
  for (double& e : v) e *= s;
  return v;
}

std::size_t good_fft_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t k = m;
    for (std::size_t p : {2, 3, 5})
      while (k % p == 0) k /= p;
    if (k == 1) return m;
  }
}

}  // namespace nlsmooth
