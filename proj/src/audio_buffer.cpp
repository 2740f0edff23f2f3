#include "cadenza/audio_buffer.hpp"

#include <cmath>
#include <cstdlib>

#include "cadenza/errors.hpp"

namespace cadenza {

void validate(const AudioBuffer& buffer) {
  if (buffer.channels.empty())
    throw InvalidArgument("audio buffer has no channels");
  if (buffer.sample_rate <= 0)
    throw InvalidArgument("audio buffer sample rate must be positive");
  const std::size_t len = buffer.channels[0].size();
  for (const auto& ch : buffer.channels) {
    if (ch.size() != len)
      throw InvalidArgument("audio buffer channels differ in length");
    for (double v : ch) {
      if (!std::isfinite(v))
        throw InvalidArgument("audio buffer contains a non-finite sample");
    }
  }
}

double peak(const AudioBuffer& buffer) {
  double p = 0.0;
  for (const auto& ch : buffer.channels)
    for (double v : ch) p = std::max(p, std::abs(v));
  return p;
}

double energy(const AudioBuffer& buffer) {
  double e = 0.0;
  for (const auto& ch : buffer.channels)
    for (double v : ch) e += v * v;
  return e;
}

}  // namespace cadenza
