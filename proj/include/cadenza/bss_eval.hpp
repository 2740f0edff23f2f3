#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cadenza/audio_buffer.hpp"

namespace cadenza {

// Per-frame SDR record. A channel entry is empty when the reference was
// silent in that frame; channel_median is empty iff every channel was.
struct SdrFrame {
  int frame_index = 0;
  std::vector<std::optional<double>> per_channel_sdr;
  std::optional<double> channel_median;
};

struct TrackSdr {
  double track_median = 0.0;
  std::vector<SdrFrame> frames;
};

// Aggregated result for one instrument: per-track medians plus their median.
struct SdrReport {
  std::map<std::string, double> track_medians;
  double instrument_median = 0.0;
  std::size_t frame_count = 0;
  std::optional<double> smr_reference;
};

// Median with the even-count rule (mean of the middle two).
double median(std::vector<double> values);

// Solves the symmetric Toeplitz system T h = rhs, where T's first column is
// `first_column`. O(n^2) Levinson recursion; first_column[0] must dominate.
std::vector<double> levinson_solve(const std::vector<double>& first_column,
                                   const std::vector<double>& rhs);

// Projection SDR: least-squares FIR projection (filter_len taps) of the
// estimate onto delayed copies of the reference, then
// 10*log10(|s_target|^2 / |estimate - s_target|^2), clamped to [-100, 100].
// Empty result when the reference frame energy is below 1e-12.
std::optional<double> projection_sdr(const std::vector<double>& reference,
                                     const std::vector<double>& estimate,
                                     int filter_len = 512);

// Framewise SDR over non-overlapping windows (default 1 s), median across
// channels then across defined frames. Throws NoValidFrames when every frame
// is undefined.
TrackSdr track_sdr(const AudioBuffer& reference, const AudioBuffer& estimate,
                   double frame_s = 1.0, int filter_len = 512);

// Median across per-track values.
double dataset_sdr(const std::map<std::string, double>& per_track);

enum class TTestMethod { pooled, welch };

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
};

// Two-sample two-sided t test. Pooled variance by default, which gives the
// integer df = n_a + n_b - 2.
TTestResult t_test(const std::vector<double>& samples_a,
                   const std::vector<double>& samples_b,
                   TTestMethod method = TTestMethod::pooled);

}  // namespace cadenza
