#pragma once

#include <cstddef>
#include <vector>

namespace cadenza {

// Multichannel float audio. All processing runs on 64-bit samples; files are
// converted on read/write. Channels always share one length.
struct AudioBuffer {
  int sample_rate = 0;
  std::vector<std::vector<double>> channels;

  AudioBuffer() = default;
  AudioBuffer(int channel_count, std::size_t length, int rate)
      : sample_rate(rate),
        channels(static_cast<std::size_t>(channel_count),
                 std::vector<double>(length, 0.0)) {}

  int channel_count() const { return static_cast<int>(channels.size()); }
  std::size_t length() const { return channels.empty() ? 0 : channels[0].size(); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(length()) / sample_rate : 0.0;
  }
};

// Throws InvalidArgument unless the buffer satisfies the carrier invariants:
// >=1 channel, equal channel lengths, positive rate, finite samples.
void validate(const AudioBuffer& buffer);

// Peak absolute sample value across all channels (0 for an empty buffer).
double peak(const AudioBuffer& buffer);

// Sum of squared samples across all channels.
double energy(const AudioBuffer& buffer);

}  // namespace cadenza
