#include "cadenza/scene.hpp"

#include <algorithm>
#include <cmath>

#include "cadenza/bss_eval.hpp"
#include "cadenza/convolver.hpp"
#include "cadenza/errors.hpp"

namespace cadenza {

std::vector<double> assign_azimuths(int n, double spacing_deg, double center_deg) {
  if (n < 1) throw InvalidArgument("assign_azimuths: need at least one source");
  std::vector<double> azimuths(static_cast<std::size_t>(n));
  const double mid = (n - 1) / 2.0;
  for (int i = 0; i < n; ++i)
    azimuths[static_cast<std::size_t>(i)] = center_deg + (i - mid) * spacing_deg;
  return azimuths;
}

std::vector<SceneStem> merge_same_instrument(std::vector<SceneStem> stems) {
  std::vector<SceneStem> merged;
  for (auto& stem : stems) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const SceneStem& s) { return s.instrument == stem.instrument; });
    if (it == merged.end()) {
      merged.push_back(std::move(stem));
      continue;
    }
    if (it->audio.length() != stem.audio.length() ||
        it->audio.sample_rate != stem.audio.sample_rate ||
        it->audio.channel_count() != stem.audio.channel_count())
      throw InvalidArgument("merge_same_instrument: stems differ in shape or rate");
    for (int c = 0; c < it->audio.channel_count(); ++c)
      for (std::size_t n = 0; n < it->audio.length(); ++n)
        it->audio.channels[c][n] += stem.audio.channels[c][n];
  }
  return merged;
}

RenderedScene render(const SceneSpec& spec) {
  if (spec.stems.empty()) throw InvalidArgument("render: no stems");
  const int rate = spec.stems[0].audio.sample_rate;
  for (const auto& stem : spec.stems) {
    validate(stem.audio);
    if (stem.audio.channel_count() != 1)
      throw InvalidArgument("render: stems must be mono");
    if (stem.audio.sample_rate != rate)
      throw SampleRateMismatch("render: stems disagree on sample rate");
  }
  if (spec.mode == RenderMode::reverb) {
    if (!spec.ir) throw MissingImpulseResponse("reverb render requires a B-format IR");
    validate(*spec.ir);
    if (spec.ir->sample_rate != rate)
      throw SampleRateMismatch("render: IR sample rate differs from stems");
  }

  RenderedScene scene;
  scene.azimuths_deg =
      assign_azimuths(static_cast<int>(spec.stems.size()), spec.spacing_deg, spec.center_deg);
  scene.metadata.decode_pattern = spec.decode_pattern;
  scene.metadata.spacing_deg = spec.spacing_deg;
  scene.metadata.mode = spec.mode;

  for (std::size_t i = 0; i < spec.stems.size(); ++i) {
    const SceneStem& stem = spec.stems[i];
    const double azimuth = scene.azimuths_deg[i];
    AudioBuffer stereo;
    if (spec.mode == RenderMode::reverb) {
      const BFormatSignal rotated = rotate_z(*spec.ir, azimuth);
      const AudioBuffer stereo_ir =
          midside_to_stereo(decode_midside(rotated, spec.decode_pattern));
      stereo = convolve_stereo(stem.audio, stereo_ir);
    } else {
      const auto [gl, gr] = anechoic_gains(azimuth, spec.decode_pattern);
      stereo = AudioBuffer(2, stem.audio.length(), rate);
      for (std::size_t n = 0; n < stem.audio.length(); ++n) {
        stereo.channels[0][n] = gl * stem.audio.channels[0][n];
        stereo.channels[1][n] = gr * stem.audio.channels[0][n];
      }
    }
    scene.stems_stereo.emplace_back(stem.instrument, std::move(stereo));
  }

  // Zero-pad everything to the longest rendered stem so the mixture identity
  // holds sample for sample.
  std::size_t rendered_len = 0;
  for (const auto& [_, audio] : scene.stems_stereo)
    rendered_len = std::max(rendered_len, audio.length());
  for (auto& [_, audio] : scene.stems_stereo)
    for (auto& ch : audio.channels) ch.resize(rendered_len, 0.0);

  auto sum_stems = [&]() {
    AudioBuffer mixture(2, rendered_len, rate);
    for (const auto& [_, audio] : scene.stems_stereo)
      for (int c = 0; c < 2; ++c)
        for (std::size_t n = 0; n < rendered_len; ++n)
          mixture.channels[c][n] += audio.channels[c][n];
    return mixture;
  };
  scene.mixture = sum_stems();

  if (spec.normalize) {
    const double mix_peak = peak(scene.mixture);
    if (mix_peak > 0.0) {
      const double scale = spec.normalize_peak / mix_peak;
      for (auto& [_, audio] : scene.stems_stereo)
        for (auto& ch : audio.channels)
          for (double& v : ch) v *= scale;
      // Re-sum after scaling: scaling the stems and the mixture separately
      // would break the bit-exact mixture identity.
      scene.mixture = sum_stems();
      scene.metadata.normalization = scale;
    }
  }
  return scene;
}

double smr_reference(const RenderedScene& scene, const std::string& target,
                     int filter_len) {
  const auto it = std::find_if(
      scene.stems_stereo.begin(), scene.stems_stereo.end(),
      [&](const auto& entry) { return entry.first == target; });
  if (it == scene.stems_stereo.end())
    throw UnknownInstrument("smr_reference: no stem named " + target);
  return track_sdr(it->second, scene.mixture, 1.0, filter_len).track_median;
}

}  // namespace cadenza
