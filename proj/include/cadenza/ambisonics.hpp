#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cadenza/audio_buffer.hpp"

namespace cadenza {

// First-order ambisonic signal in FuMa channel order (W, X, Y, Z) with the
// legacy 1/sqrt(2) weight on W. Azimuths are degrees, counter-clockwise
// positive, 0 deg = front.
struct BFormatSignal {
  std::vector<double> w, x, y, z;
  int sample_rate = 0;

  std::size_t length() const { return w.size(); }
};

enum class AmbisonicConvention { fuma, ambix };

struct DirectionCoefficients {
  double w = 0.0;  // 1/sqrt(2) under FuMa
  double x = 0.0;  // cos(azimuth)
  double y = 0.0;  // sin(azimuth)
  double azimuth_deg = 0.0;
};

struct MidSidePair {
  std::vector<double> mid, side;
  int sample_rate = 0;
};

void validate(const BFormatSignal& sig);

// Interprets a 4-channel buffer as B-format. AmbiX input (ACN/SN3D) is
// converted to FuMa by reordering W,Y,Z,X -> W,X,Y,Z and scaling W by
// 1/sqrt(2).
BFormatSignal bformat_from_buffer(const AudioBuffer& buffer,
                                  AmbisonicConvention convention = AmbisonicConvention::fuma);

AudioBuffer bformat_to_buffer(const BFormatSignal& sig);

// Horizontal rotation: moves a source encoded at azimuth phi to phi + theta.
// W and Z pass through.
BFormatSignal rotate_z(const BFormatSignal& sig, double azimuth_deg);

// FuMa panning coefficients for a horizontal plane-wave source.
DirectionCoefficients encode_direction(double azimuth_deg);

// Front-facing virtual microphone of polar pattern p for mid, figure-of-eight
// at +90 deg for side. Z is discarded (horizontal-only decode).
MidSidePair decode_midside(const BFormatSignal& sig, double pattern);

// L = mid + side, R = mid - side.
AudioBuffer midside_to_stereo(const MidSidePair& ms);

// Composition of encode_direction -> decode_midside -> midside_to_stereo on a
// unit impulse: (m + sin, m - sin) with m = p + (1-p)*cos(azimuth).
std::pair<double, double> anechoic_gains(double azimuth_deg, double pattern);

}  // namespace cadenza
