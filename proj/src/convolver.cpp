#include "cadenza/convolver.hpp"

#include <complex>

#include "cadenza/errors.hpp"
#include "cadenza/fft.hpp"

namespace cadenza {

PartitionPlan make_partition_plan(std::size_t ir_length, std::size_t block_size) {
  if (ir_length == 0) throw InvalidArgument("empty impulse response");
  if (block_size < 64 || (block_size & (block_size - 1)) != 0)
    throw InvalidArgument("block size must be a power of two >= 64");
  PartitionPlan plan;
  plan.block_size = block_size;
  plan.ir_partitions = (ir_length + block_size - 1) / block_size;
  plan.fft_size = 2 * block_size;
  return plan;
}

std::vector<double> convolve_direct(const std::vector<double>& signal,
                                    const std::vector<double>& ir) {
  if (signal.empty() || ir.empty())
    throw InvalidArgument("convolve_direct: empty input");
  std::vector<double> out(signal.size() + ir.size() - 1, 0.0);
  // Tap-major loop: the inner axpy over the signal vectorizes.
  for (std::size_t m = 0; m < ir.size(); ++m) {
    const double h = ir[m];
    if (h == 0.0) continue;
    double* dst = out.data() + m;
    const double* src = signal.data();
    const std::size_t n = signal.size();
    for (std::size_t i = 0; i < n; ++i) dst[i] += h * src[i];
  }
  return out;
}

std::vector<double> convolve_fft(const std::vector<double>& signal,
                                 const std::vector<double>& ir,
                                 const PartitionPlan& plan) {
  if (signal.empty() || ir.empty())
    throw InvalidArgument("convolve_fft: empty input");
  const std::size_t B = plan.block_size;
  const std::size_t P = (ir.size() + B - 1) / B;
  if (plan.ir_partitions != P || plan.fft_size != 2 * B)
    throw InvalidArgument("partition plan does not match impulse response");

  Fft fft(plan.fft_size);
  using Spectrum = std::vector<std::complex<double>>;

  // Partition the IR: each slab zero-padded to 2B and transformed once.
  std::vector<Spectrum> ir_spectra(P);
  for (std::size_t p = 0; p < P; ++p) {
    Spectrum h(plan.fft_size, {0.0, 0.0});
    const std::size_t begin = p * B;
    const std::size_t count = std::min(B, ir.size() - begin);
    for (std::size_t i = 0; i < count; ++i) h[i] = ir[begin + i];
    fft.forward(h);
    ir_spectra[p] = std::move(h);
  }

  const std::size_t out_len = signal.size() + ir.size() - 1;
  const std::size_t n_blocks = (out_len + B - 1) / B;
  std::vector<double> out(out_len, 0.0);

  // Frequency-domain delay line: fdl[0] is the newest input block spectrum.
  std::vector<Spectrum> fdl;
  std::vector<double> window(2 * B, 0.0);  // previous block | current block
  Spectrum acc(plan.fft_size);

  for (std::size_t blk = 0; blk < n_blocks; ++blk) {
    // Slide the input window one block (overlap-save).
    for (std::size_t i = 0; i < B; ++i) window[i] = window[i + B];
    const std::size_t in_begin = blk * B;
    for (std::size_t i = 0; i < B; ++i) {
      const std::size_t n = in_begin + i;
      window[B + i] = n < signal.size() ? signal[n] : 0.0;
    }

    Spectrum x(window.begin(), window.end());
    fft.forward(x);
    fdl.insert(fdl.begin(), std::move(x));
    if (fdl.size() > P) fdl.pop_back();

    for (auto& v : acc) v = {0.0, 0.0};
    for (std::size_t p = 0; p < fdl.size(); ++p) {
      const Spectrum& h = ir_spectra[p];
      const Spectrum& s = fdl[p];
      for (std::size_t i = 0; i < plan.fft_size; ++i) acc[i] += h[i] * s[i];
    }
    Spectrum y = acc;
    fft.inverse(y);

    // The last B samples of the 2B circular result are aliasing-free.
    const std::size_t out_begin = blk * B;
    for (std::size_t i = 0; i < B && out_begin + i < out_len; ++i)
      out[out_begin + i] = y[B + i].real();
  }
  return out;
}

AudioBuffer convolve_stereo(const AudioBuffer& signal, const AudioBuffer& ir) {
  validate(signal);
  validate(ir);
  if (signal.channel_count() != 1)
    throw InvalidArgument("convolve_stereo expects a mono signal");
  if (ir.channel_count() != 2)
    throw InvalidArgument("convolve_stereo expects a stereo impulse response");
  if (signal.sample_rate != ir.sample_rate)
    throw SampleRateMismatch("signal and IR sample rates differ");

  const PartitionPlan plan = make_partition_plan(ir.length());
  AudioBuffer out(2, signal.length() + ir.length() - 1, signal.sample_rate);
  for (int c = 0; c < 2; ++c)
    out.channels[c] = convolve_fft(signal.channels[0], ir.channels[c], plan);
  return out;
}

}  // namespace cadenza
