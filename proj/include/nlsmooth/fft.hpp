#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nlsmooth {

// Real-to-complex transform pair of fixed length (FFTW). Copyable; execution is thread-safe.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  std::size_t size() const { return n_; }
  // Unnormalized forward transform; input is zero-padded or truncated to size().
  std::vector<std::complex<double>> forward(std::span<const double> x) const;
  // Inverse including the 1/n factor.
  std::vector<double> inverse(std::span<const std::complex<double>> X) const;

 private:
  struct Plans;
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

// Smallest 2^a 3^b 5^c not below n.
std::size_t good_fft_size(std::size_t n);

}  // namespace nlsmooth
