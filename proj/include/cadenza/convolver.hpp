#pragma once

#include <cstddef>
#include <vector>

#include "cadenza/audio_buffer.hpp"

namespace cadenza {

// Uniform partitioning of an impulse response for overlap-save convolution
// with a frequency-domain delay line.
struct PartitionPlan {
  std::size_t block_size = 4096;  // power of two, >= 64
  std::size_t ir_partitions = 0;  // ceil(ir_length / block_size)
  std::size_t fft_size = 8192;    // 2 * block_size
};

PartitionPlan make_partition_plan(std::size_t ir_length, std::size_t block_size = 4096);

// Full linear convolution in the time domain, length N + M - 1. O(N*M); this
// is the oracle the FFT path is checked against.
std::vector<double> convolve_direct(const std::vector<double>& signal,
                                    const std::vector<double>& ir);

// Uniform-partition overlap-save convolution. Identical result to
// convolve_direct within 1e-9 relative L2.
std::vector<double> convolve_fft(const std::vector<double>& signal,
                                 const std::vector<double>& ir,
                                 const PartitionPlan& plan);

// Convolves a mono buffer with each channel of a stereo IR. Output trimmed to
// len(signal) + len(ir) - 1.
AudioBuffer convolve_stereo(const AudioBuffer& signal, const AudioBuffer& ir);

}  // namespace cadenza
