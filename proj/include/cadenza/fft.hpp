#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cadenza {

// Iterative radix-2 FFT with precomputed twiddles. Power-of-two sizes only,
// which is all the partitioned convolver and the correlation paths need.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::vector<std::complex<double>>& x) const;
  void inverse(std::vector<std::complex<double>>& x) const;

  static std::size_t next_pow2(std::size_t n);

 private:
  void transform(std::vector<std::complex<double>>& x, bool invert) const;

  std::size_t n_;
  std::vector<std::size_t> rev_;
  std::vector<std::complex<double>> twiddle_;  // exp(-2πik/n), k < n/2
};

// Full linear convolution via one zero-padded FFT (not partitioned). Used by
// the metric path for correlations and short filters.
std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b);

// Correlation r[k] = sum_n a[n] * b[n + k] for k = 0..max_lag-1.
std::vector<double> fft_correlate(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  std::size_t max_lag);

}  // namespace cadenza
