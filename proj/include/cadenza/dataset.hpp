#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cadenza/audio_buffer.hpp"

namespace cadenza {

// Table-1 instrument vocabulary and family helpers.
bool is_known_instrument(const std::string& label);
bool is_string_family(const std::string& label);
bool is_woodwind_family(const std::string& label);
const std::vector<std::string>& instrument_vocabulary();

// Strips a trailing line suffix: "violin_1" -> "violin". Labels that do not
// end in _<digits> pass through unchanged.
std::string canonical_instrument(const std::string& label);

enum class Split { train, valid, eval };

struct StemRef {
  std::string instrument;
  std::filesystem::path wav_path;
};

struct TrackEntry {
  std::string track_id;
  std::string source_dataset;
  Split split = Split::train;
  std::vector<StemRef> stems;
};

// JSON-backed corpus description; audio is referenced by path, never
// embedded. Loading verifies that every referenced file exists and that all
// labels come from the Table-1 vocabulary.
struct CorpusManifest {
  int version = 1;
  int sample_rate = 0;
  std::vector<TrackEntry> tracks;

  static CorpusManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::vector<const TrackEntry*> tracks_in(Split split) const;
};

enum class SampleOrigin { quartet, random_mix };

// One training/validation item: aligned stems plus regeneration metadata.
// The mixture is always derived as the sum of stems, in listed order, so the
// mixture identity can never drift from the stems.
struct MixtureSample {
  std::string sample_id;
  std::vector<std::pair<std::string, AudioBuffer>> stems;
  SampleOrigin origin = SampleOrigin::quartet;
  std::uint64_t rng_seed = 0;

  std::size_t length() const { return stems.empty() ? 0 : stems[0].second.length(); }
  int sample_rate() const { return stems.empty() ? 0 : stems[0].second.sample_rate; }
  double duration_s() const;
  AudioBuffer mixture() const;
};

// Consecutive non-overlapping segments of seg_s seconds; the trailing
// remainder is discarded. A track shorter than one segment yields an empty
// list.
std::vector<MixtureSample> segment(
    const std::vector<std::pair<std::string, AudioBuffer>>& stems, double seg_s = 15.0,
    const std::string& base_id = "track");

// Draws a random ensemble of n distinct instruments (n in [n_min, n_max])
// with at least one string and one woodwind, picking one pool segment per
// instrument and trimming all stems to a common length. Deterministic in the
// seed.
MixtureSample random_mixture(const std::vector<MixtureSample>& pool, std::uint64_t seed,
                             int n_min = 2, int n_max = 5);

// One shared random offset for all stems, keeping them aligned.
MixtureSample training_crop(const MixtureSample& sample, double crop_s, std::uint64_t seed);

struct AugmentOptions {
  double gain_db_range = 6.0;  // uniform in [-range, +range] dB per stem
  double swap_prob = 0.5;      // sample-wide L/R swap probability
};

// Random gain per stem and coherent channel swapping.
MixtureSample augment(const MixtureSample& sample, std::uint64_t seed,
                      const AugmentOptions& options = {});

struct TargetPair {
  AudioBuffer mixture;
  AudioBuffer target;
  AudioBuffer residual;
};

// Splits a sample into (mixture, target stem, residual = everything else).
// mixture is formed as target + residual, so the identity is exact.
TargetPair target_pair(const MixtureSample& sample, const std::string& target);

}  // namespace cadenza
