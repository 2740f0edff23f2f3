#include "cadenza/ambisonics.hpp"

#include <cmath>

#include "cadenza/errors.hpp"

namespace cadenza {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double deg_to_rad(double deg) { return deg * (M_PI / 180.0); }

}  // namespace

void validate(const BFormatSignal& sig) {
  const std::size_t len = sig.w.size();
  if (sig.x.size() != len || sig.y.size() != len || sig.z.size() != len)
    throw InvalidArgument("B-format channels differ in length");
  if (sig.sample_rate <= 0)
    throw InvalidArgument("B-format sample rate must be positive");
  for (const auto* ch : {&sig.w, &sig.x, &sig.y, &sig.z})
    for (double v : *ch)
      if (!std::isfinite(v)) throw InvalidArgument("non-finite B-format sample");
}

BFormatSignal bformat_from_buffer(const AudioBuffer& buffer,
                                  AmbisonicConvention convention) {
  validate(buffer);
  if (buffer.channel_count() != 4)
    throw InvalidArgument("B-format requires exactly 4 channels");
  BFormatSignal sig;
  sig.sample_rate = buffer.sample_rate;
  if (convention == AmbisonicConvention::fuma) {
    sig.w = buffer.channels[0];
    sig.x = buffer.channels[1];
    sig.y = buffer.channels[2];
    sig.z = buffer.channels[3];
  } else {
    // AmbiX is ACN order W,Y,Z,X with SN3D weights; FuMa W carries 1/sqrt(2).
    sig.w = buffer.channels[0];
    for (double& v : sig.w) v *= kInvSqrt2;
    sig.y = buffer.channels[1];
    sig.z = buffer.channels[2];
    sig.x = buffer.channels[3];
  }
  return sig;
}

AudioBuffer bformat_to_buffer(const BFormatSignal& sig) {
  validate(sig);
  AudioBuffer buffer;
  buffer.sample_rate = sig.sample_rate;
  buffer.channels = {sig.w, sig.x, sig.y, sig.z};
  return buffer;
}

BFormatSignal rotate_z(const BFormatSignal& sig, double azimuth_deg) {
  validate(sig);
  const double theta = deg_to_rad(std::fmod(azimuth_deg, 360.0));
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  BFormatSignal out;
  out.sample_rate = sig.sample_rate;
  out.w = sig.w;
  out.z = sig.z;
  out.x.resize(sig.length());
  out.y.resize(sig.length());
  for (std::size_t n = 0; n < sig.length(); ++n) {
    out.x[n] = sig.x[n] * c - sig.y[n] * s;
    out.y[n] = sig.x[n] * s + sig.y[n] * c;
  }
  return out;
}

DirectionCoefficients encode_direction(double azimuth_deg) {
  const double theta = deg_to_rad(azimuth_deg);
  DirectionCoefficients d;
  d.w = kInvSqrt2;
  d.x = std::cos(theta);
  d.y = std::sin(theta);
  d.azimuth_deg = azimuth_deg;
  return d;
}

MidSidePair decode_midside(const BFormatSignal& sig, double pattern) {
  validate(sig);
  if (pattern < 0.0 || pattern > 1.0)
    throw InvalidArgument("decode pattern must lie in [0, 1]");
  MidSidePair ms;
  ms.sample_rate = sig.sample_rate;
  ms.mid.resize(sig.length());
  ms.side = sig.y;
  const double omni = pattern * std::sqrt(2.0);
  const double dipole = 1.0 - pattern;
  for (std::size_t n = 0; n < sig.length(); ++n)
    ms.mid[n] = omni * sig.w[n] + dipole * sig.x[n];
  return ms;
}

AudioBuffer midside_to_stereo(const MidSidePair& ms) {
  if (ms.mid.size() != ms.side.size())
    throw InvalidArgument("mid and side lengths differ");
  AudioBuffer out(2, ms.mid.size(), ms.sample_rate);
  for (std::size_t n = 0; n < ms.mid.size(); ++n) {
    out.channels[0][n] = ms.mid[n] + ms.side[n];
    out.channels[1][n] = ms.mid[n] - ms.side[n];
  }
  return out;
}

std::pair<double, double> anechoic_gains(double azimuth_deg, double pattern) {
  if (pattern < 0.0 || pattern > 1.0)
    throw InvalidArgument("decode pattern must lie in [0, 1]");
  const double theta = deg_to_rad(azimuth_deg);
  const double m = pattern + (1.0 - pattern) * std::cos(theta);
  const double s = std::sin(theta);
  return {m + s, m - s};
}

}  // namespace cadenza
