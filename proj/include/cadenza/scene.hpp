#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cadenza/ambisonics.hpp"
#include "cadenza/audio_buffer.hpp"

namespace cadenza {

enum class RenderMode { anechoic, reverb };

struct SceneStem {
  std::string instrument;
  AudioBuffer audio;  // mono
};

// Ensemble layout: stems in score order, rendered either with direct
// mid-side panning gains (anechoic) or through a rotated B-format IR
// decoded to stereo (reverb).
struct SceneSpec {
  std::vector<SceneStem> stems;
  double spacing_deg = 10.0;
  RenderMode mode = RenderMode::anechoic;
  std::optional<BFormatSignal> ir;
  double decode_pattern = 0.5;
  double center_deg = 0.0;
  bool normalize = true;
  double normalize_peak = 0.95;
};

struct SceneMetadata {
  std::string azimuth_convention = "counter-clockwise positive, 0 deg front";
  std::string channel_convention = "FuMa";
  double decode_pattern = 0.5;
  double spacing_deg = 10.0;
  RenderMode mode = RenderMode::anechoic;
  double normalization = 1.0;
};

struct RenderedScene {
  std::vector<std::pair<std::string, AudioBuffer>> stems_stereo;
  AudioBuffer mixture;  // exact sum of stems_stereo in listed order
  std::vector<double> azimuths_deg;
  SceneMetadata metadata;
};

// Symmetric front-centered layout: theta_i = center + (i - (n-1)/2) * spacing.
std::vector<double> assign_azimuths(int n, double spacing_deg, double center_deg = 0.0);

// Sums stems sharing a label into one stem, keeping first-occurrence order.
std::vector<SceneStem> merge_same_instrument(std::vector<SceneStem> stems);

RenderedScene render(const SceneSpec& spec);

// SDR of (reference = target stem, estimate = mixture): how masked the
// instrument is before any separation.
double smr_reference(const RenderedScene& scene, const std::string& target,
                     int filter_len = 512);

}  // namespace cadenza
