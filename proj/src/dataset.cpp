#include "cadenza/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "cadenza/errors.hpp"
#include "cadenza/rng.hpp"

namespace cadenza {

namespace {

const std::vector<std::string> kVocabulary = {
    "bassoon", "cello", "clarinet", "flute", "oboe", "saxophone", "viola", "violin"};

const std::set<std::string> kStrings = {"cello", "viola", "violin"};
const std::set<std::string> kWoodwinds = {"bassoon", "clarinet", "flute", "oboe", "saxophone"};

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "valid") return Split::valid;
  if (s == "eval") return Split::eval;
  throw InvalidArgument("manifest: unknown split '" + s + "'");
}

std::string split_to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::eval: return "eval";
  }
  return "train";
}

}  // namespace

const std::vector<std::string>& instrument_vocabulary() { return kVocabulary; }

bool is_known_instrument(const std::string& label) {
  return std::find(kVocabulary.begin(), kVocabulary.end(), label) != kVocabulary.end();
}

bool is_string_family(const std::string& label) { return kStrings.count(label) > 0; }

bool is_woodwind_family(const std::string& label) { return kWoodwinds.count(label) > 0; }

std::string canonical_instrument(const std::string& label) {
  const auto pos = label.rfind('_');
  if (pos == std::string::npos || pos + 1 == label.size()) return label;
  for (std::size_t i = pos + 1; i < label.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(label[i]))) return label;
  return label.substr(0, pos);
}

CorpusManifest CorpusManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFile("manifest " + path.string() + ": " + e.what());
  }

  CorpusManifest manifest;
  manifest.version = j.value("version", 1);
  if (!j.contains("sample_rate") || !j.contains("tracks"))
    throw InvalidArgument("manifest: missing sample_rate or tracks");
  manifest.sample_rate = j.at("sample_rate").get<int>();
  if (manifest.sample_rate <= 0) throw InvalidArgument("manifest: bad sample_rate");

  const auto base_dir = path.parent_path();
  for (const auto& jt : j.at("tracks")) {
    TrackEntry track;
    track.track_id = jt.at("track_id").get<std::string>();
    track.source_dataset = jt.value("source_dataset", std::string{});
    track.split = split_from_string(jt.value("split", std::string{"train"}));
    for (const auto& js : jt.at("stems")) {
      StemRef stem;
      stem.instrument = js.at("instrument").get<std::string>();
      if (!is_known_instrument(stem.instrument))
        throw UnknownInstrument("manifest: instrument '" + stem.instrument +
                                "' not in the vocabulary");
      std::filesystem::path p = js.at("wav_path").get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      if (!std::filesystem::exists(p))
        throw IoError("manifest: missing audio file " + p.string());
      stem.wav_path = p;
      track.stems.push_back(std::move(stem));
    }
    manifest.tracks.push_back(std::move(track));
  }
  return manifest;
}

void CorpusManifest::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["version"] = version;
  j["sample_rate"] = sample_rate;
  j["tracks"] = nlohmann::json::array();
  for (const auto& track : tracks) {
    nlohmann::json jt;
    jt["track_id"] = track.track_id;
    jt["source_dataset"] = track.source_dataset;
    jt["split"] = split_to_string(track.split);
    jt["stems"] = nlohmann::json::array();
    for (const auto& stem : track.stems) {
      jt["stems"].push_back({{"instrument", stem.instrument},
                             {"wav_path", stem.wav_path.string()}});
    }
    j["tracks"].push_back(std::move(jt));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<const TrackEntry*> CorpusManifest::tracks_in(Split split) const {
  std::vector<const TrackEntry*> result;
  for (const auto& track : tracks)
    if (track.split == split) result.push_back(&track);
  return result;
}

double MixtureSample::duration_s() const {
  return sample_rate() > 0 ? static_cast<double>(length()) / sample_rate() : 0.0;
}

AudioBuffer MixtureSample::mixture() const {
  if (stems.empty()) throw InvalidArgument("mixture of an empty sample");
  AudioBuffer mix(stems[0].second.channel_count(), length(), sample_rate());
  for (const auto& [_, audio] : stems)
    for (int c = 0; c < mix.channel_count(); ++c)
      for (std::size_t n = 0; n < mix.length(); ++n)
        mix.channels[c][n] += audio.channels[c][n];
  return mix;
}

std::vector<MixtureSample> segment(
    const std::vector<std::pair<std::string, AudioBuffer>>& stems, double seg_s,
    const std::string& base_id) {
  if (stems.empty()) throw InvalidArgument("segment: no stems");
  const int rate = stems[0].second.sample_rate;
  const std::size_t len = stems[0].second.length();
  for (const auto& [_, audio] : stems) {
    if (audio.length() != len || audio.sample_rate != rate)
      throw InvalidArgument("segment: stems not aligned");
  }
  const std::size_t seg_len = static_cast<std::size_t>(std::lround(seg_s * rate));
  if (seg_len == 0) throw InvalidArgument("segment: empty segment length");

  std::vector<MixtureSample> samples;
  const std::size_t n_segments = len / seg_len;
  for (std::size_t s = 0; s < n_segments; ++s) {
    MixtureSample sample;
    sample.sample_id = base_id + "_seg" + std::to_string(s);
    sample.origin = SampleOrigin::quartet;
    for (const auto& [instrument, audio] : stems) {
      AudioBuffer cut(audio.channel_count(), seg_len, rate);
      for (int c = 0; c < audio.channel_count(); ++c)
        std::copy_n(audio.channels[c].begin() + static_cast<long>(s * seg_len), seg_len,
                    cut.channels[c].begin());
      sample.stems.emplace_back(instrument, std::move(cut));
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

MixtureSample random_mixture(const std::vector<MixtureSample>& pool, std::uint64_t seed,
                             int n_min, int n_max) {
  if (n_min < 2 || n_max < n_min)
    throw InvalidArgument("random_mixture: stem count range must satisfy 2 <= min <= max");

  // Index pool stems by instrument.
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> by_instrument;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t s = 0; s < pool[i].stems.size(); ++s)
      by_instrument[pool[i].stems[s].first].push_back({i, s});

  std::vector<std::string> strings, woodwinds, all;
  for (const auto& [label, _] : by_instrument) {
    all.push_back(label);
    if (is_string_family(label)) strings.push_back(label);
    if (is_woodwind_family(label)) woodwinds.push_back(label);
  }
  if (strings.empty() || woodwinds.empty())
    throw InsufficientPool("random_mixture: pool needs at least one string and one woodwind");

  Rng rng(seed);
  const int n_cap = std::min<int>(n_max, static_cast<int>(all.size()));
  if (n_cap < n_min)
    throw InsufficientPool("random_mixture: fewer instruments available than requested");
  const int n = rng.uniform_int(n_min, n_cap);

  // One string and one woodwind first, then fill from the remainder.
  std::vector<std::string> chosen;
  chosen.push_back(strings[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(strings.size()) - 1))]);
  chosen.push_back(woodwinds[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(woodwinds.size()) - 1))]);
  std::vector<std::string> rest;
  for (const auto& label : all)
    if (label != chosen[0] && label != chosen[1]) rest.push_back(label);
  while (static_cast<int>(chosen.size()) < n) {
    const int pick = rng.uniform_int(0, static_cast<int>(rest.size()) - 1);
    chosen.push_back(rest[static_cast<std::size_t>(pick)]);
    rest.erase(rest.begin() + pick);
  }

  MixtureSample sample;
  sample.sample_id = "rndmix_" + std::to_string(seed);
  sample.origin = SampleOrigin::random_mix;
  sample.rng_seed = seed;

  std::size_t common_len = SIZE_MAX;
  for (const auto& label : chosen) {
    const auto& candidates = by_instrument.at(label);
    const auto [track_idx, stem_idx] =
        candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(candidates.size()) - 1))];
    sample.stems.emplace_back(label, pool[track_idx].stems[stem_idx].second);
    common_len = std::min(common_len, sample.stems.back().second.length());
  }
  for (auto& [_, audio] : sample.stems)
    for (auto& ch : audio.channels) ch.resize(common_len);
  return sample;
}

MixtureSample training_crop(const MixtureSample& sample, double crop_s, std::uint64_t seed) {
  if (sample.stems.empty()) throw InvalidArgument("training_crop: empty sample");
  const std::size_t crop_len =
      static_cast<std::size_t>(std::lround(crop_s * sample.sample_rate()));
  if (crop_len == 0) throw InvalidArgument("training_crop: empty crop");
  if (sample.length() < crop_len)
    throw TooShort("training_crop: sample shorter than the crop window");

  Rng rng(seed);
  const std::size_t max_offset = sample.length() - crop_len;
  const std::size_t offset =
      max_offset == 0
          ? 0
          : static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(max_offset)));

  MixtureSample out;
  out.sample_id = sample.sample_id + "_crop";
  out.origin = sample.origin;
  out.rng_seed = seed;
  for (const auto& [instrument, audio] : sample.stems) {
    AudioBuffer cut(audio.channel_count(), crop_len, audio.sample_rate);
    for (int c = 0; c < audio.channel_count(); ++c)
      std::copy_n(audio.channels[c].begin() + static_cast<long>(offset), crop_len,
                  cut.channels[c].begin());
    out.stems.emplace_back(instrument, std::move(cut));
  }
  return out;
}

MixtureSample augment(const MixtureSample& sample, std::uint64_t seed,
                      const AugmentOptions& options) {
  Rng rng(seed);
  MixtureSample out;
  out.sample_id = sample.sample_id + "_aug";
  out.origin = sample.origin;
  out.rng_seed = seed;

  std::vector<double> gains;
  gains.reserve(sample.stems.size());
  for (std::size_t i = 0; i < sample.stems.size(); ++i) {
    const double db = rng.uniform(-options.gain_db_range, options.gain_db_range);
    gains.push_back(std::pow(10.0, db / 20.0));
  }
  // One draw for the whole sample: swapping per stem would break the spatial
  // consistency between stems and mixture.
  const bool swap = rng.bernoulli(options.swap_prob);

  for (std::size_t i = 0; i < sample.stems.size(); ++i) {
    const auto& [instrument, audio] = sample.stems[i];
    AudioBuffer scaled = audio;
    for (auto& ch : scaled.channels)
      for (double& v : ch) v *= gains[i];
    if (swap && scaled.channel_count() == 2)
      std::swap(scaled.channels[0], scaled.channels[1]);
    out.stems.emplace_back(instrument, std::move(scaled));
  }
  return out;
}

TargetPair target_pair(const MixtureSample& sample, const std::string& target) {
  bool found = false;
  for (const auto& [instrument, _] : sample.stems)
    if (instrument == target) found = true;
  if (!found) throw UnknownInstrument("target_pair: no stem named " + target);

  const int channels = sample.stems[0].second.channel_count();
  const std::size_t len = sample.length();
  const int rate = sample.sample_rate();

  TargetPair pair;
  pair.target = AudioBuffer(channels, len, rate);
  pair.residual = AudioBuffer(channels, len, rate);
  for (const auto& [instrument, audio] : sample.stems) {
    AudioBuffer& dst = instrument == target ? pair.target : pair.residual;
    for (int c = 0; c < channels; ++c)
      for (std::size_t n = 0; n < len; ++n) dst.channels[c][n] += audio.channels[c][n];
  }
  // Form the mixture as target + residual so the split is exact by
  // construction.
  pair.mixture = AudioBuffer(channels, len, rate);
  for (int c = 0; c < channels; ++c)
    for (std::size_t n = 0; n < len; ++n)
      pair.mixture.channels[c][n] = pair.target.channels[c][n] + pair.residual.channels[c][n];
  return pair;
}

}  // namespace cadenza
