#include "cadenza/fft.hpp"

#include <cmath>

#include "cadenza/errors.hpp"

namespace cadenza {

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw InvalidArgument("FFT size must be a power of two");
  rev_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
    rev_[i] = r;
  }
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void Fft::transform(std::vector<std::complex<double>>& x, bool invert) const {
  if (x.size() != n_) throw InvalidArgument("FFT input size mismatch");
  for (std::size_t i = 0; i < n_; ++i)
    if (rev_[i] > i) std::swap(x[i], x[rev_[i]]);

  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t step = n_ / len;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> w = twiddle_[j * step];
        if (invert) w = std::conj(w);
        const std::complex<double> u = x[i + j];
        const std::complex<double> v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
      }
    }
  }
  if (invert) {
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (auto& v : x) v *= inv_n;
  }
}

void Fft::forward(std::vector<std::complex<double>>& x) const { transform(x, false); }
void Fft::inverse(std::vector<std::complex<double>>& x) const { transform(x, true); }

std::size_t Fft::next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_convolve(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw InvalidArgument("fft_convolve: empty input");
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = Fft::next_pow2(out_len);
  Fft fft(n);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft.forward(fa);
  fft.forward(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  fft.inverse(fa);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> fft_correlate(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  std::size_t max_lag) {
  if (a.empty() || b.empty()) throw InvalidArgument("fft_correlate: empty input");
  const std::size_t n = Fft::next_pow2(a.size() + b.size() - 1);
  Fft fft(n);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  fft.forward(fa);
  fft.forward(fb);
  for (std::size_t i = 0; i < n; ++i) fa[i] = std::conj(fa[i]) * fb[i];
  fft.inverse(fa);
  std::vector<double> out(max_lag, 0.0);
  for (std::size_t k = 0; k < max_lag && k < n; ++k) out[k] = fa[k].real();
  return out;
}

}  // namespace cadenza
