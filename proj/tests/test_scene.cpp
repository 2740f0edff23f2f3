#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cadenza/errors.hpp"
#include "cadenza/rng.hpp"
#include "cadenza/scene.hpp"

using namespace cadenza;

namespace {

AudioBuffer noise_mono(std::size_t n, int rate, std::uint64_t seed, double rms = 0.2) {
  AudioBuffer buffer(1, n, rate);
  Rng rng(seed);
  for (auto& v : buffer.channels[0]) v = rng.normal() * rms;
  return buffer;
}

}  // namespace

TEST_CASE("azimuth layout") {
  CHECK(assign_azimuths(4, 10.0) == std::vector<double>{-15.0, -5.0, 5.0, 15.0});
  CHECK(assign_azimuths(1, 10.0) == std::vector<double>{0.0});
  CHECK(assign_azimuths(2, 10.0) == std::vector<double>{-5.0, 5.0});
  CHECK(assign_azimuths(3, 8.0, 20.0) == std::vector<double>{12.0, 20.0, 28.0});
  CHECK_THROWS_AS(assign_azimuths(0, 10.0), InvalidArgument);
}

TEST_CASE("merge same instrument") {
  AudioBuffer a(1, 4, 44100), b(1, 4, 44100), c(1, 4, 44100);
  a.channels[0] = {1, 2, 3, 4};
  b.channels[0] = {10, 20, 30, 40};
  c.channels[0] = {0.5, 0.5, 0.5, 0.5};
  auto merged = merge_same_instrument({{"violin", a}, {"cello", c}, {"violin", b}});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].instrument == "violin");
  CHECK(merged[0].audio.channels[0] == std::vector<double>{11, 22, 33, 44});
  CHECK(merged[1].instrument == "cello");

  // Distinct labels pass through unchanged.
  auto untouched = merge_same_instrument({{"flute", a}, {"oboe", b}});
  CHECK(untouched.size() == 2);

  // Two identical stems double.
  auto doubled = merge_same_instrument({{"viola", a}, {"viola", a}});
  CHECK(doubled[0].audio.channels[0] == std::vector<double>{2, 4, 6, 8});

  AudioBuffer shorter(1, 3, 44100);
  CHECK_THROWS_AS(merge_same_instrument({{"violin", a}, {"violin", shorter}}),
                  InvalidArgument);
}

TEST_CASE("anechoic render of a single front stem is a pass-through") {
  SceneSpec spec;
  spec.stems.push_back({"violin", noise_mono(1000, 44100, 1)});
  spec.mode = RenderMode::anechoic;
  spec.normalize = false;
  const auto scene = render(spec);
  REQUIRE(scene.stems_stereo.size() == 1);
  CHECK(scene.azimuths_deg == std::vector<double>{0.0});
  for (std::size_t n = 0; n < 1000; ++n) {
    CHECK(scene.stems_stereo[0].second.channels[0][n] ==
          doctest::Approx(spec.stems[0].audio.channels[0][n]).epsilon(1e-14));
    CHECK(scene.stems_stereo[0].second.channels[0][n] ==
          scene.stems_stereo[0].second.channels[1][n]);
  }
}

TEST_CASE("mixture is the exact sum of rendered stems") {
  SceneSpec spec;
  for (std::uint64_t i = 0; i < 4; ++i)
    spec.stems.push_back({"stem" + std::to_string(i), noise_mono(5000, 44100, i + 10)});
  spec.mode = RenderMode::anechoic;
  const auto scene = render(spec);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t n = 0; n < scene.mixture.length(); ++n) {
      double sum = 0.0;
      for (const auto& [_, audio] : scene.stems_stereo) sum += audio.channels[c][n];
      CHECK(sum == scene.mixture.channels[c][n]);  // bit-exact
    }
  }
  // Normalization hit the requested peak.
  CHECK(peak(scene.mixture) == doctest::Approx(0.95).epsilon(1e-9));
}

TEST_CASE("render is linear in each stem") {
  SceneSpec spec;
  spec.stems.push_back({"violin", noise_mono(2000, 44100, 3)});
  spec.stems.push_back({"oboe", noise_mono(2000, 44100, 4)});
  spec.mode = RenderMode::anechoic;
  spec.normalize = false;
  const auto base = render(spec);

  auto doubled_spec = spec;
  for (auto& v : doubled_spec.stems[0].audio.channels[0]) v *= 2.0;
  const auto doubled = render(doubled_spec);
  for (int c = 0; c < 2; ++c)
    for (std::size_t n = 0; n < base.mixture.length(); ++n)
      CHECK(doubled.stems_stereo[0].second.channels[c][n] ==
            2.0 * base.stems_stereo[0].second.channels[c][n]);
}

TEST_CASE("anechoic render with all sources at front gives identical channels") {
  SceneSpec spec;
  for (std::uint64_t i = 0; i < 3; ++i)
    spec.stems.push_back({"s" + std::to_string(i), noise_mono(3000, 44100, i + 30)});
  spec.mode = RenderMode::anechoic;
  spec.spacing_deg = 0.0;  // everyone at 0 deg
  const auto scene = render(spec);
  for (std::size_t n = 0; n < scene.mixture.length(); ++n)
    CHECK(std::abs(scene.mixture.channels[0][n] - scene.mixture.channels[1][n]) <= 1e-12);
}

TEST_CASE("reverb render with a W-only delta IR") {
  const int rate = 44100;
  BFormatSignal ir;
  ir.sample_rate = rate;
  ir.w.assign(64, 0.0);
  ir.x.assign(64, 0.0);
  ir.y.assign(64, 0.0);
  ir.z.assign(64, 0.0);
  ir.w[0] = 1.0;

  SceneSpec spec;
  spec.stems.push_back({"violin", noise_mono(4000, rate, 5)});
  spec.stems.push_back({"flute", noise_mono(4000, rate, 6)});
  spec.mode = RenderMode::reverb;
  spec.ir = ir;
  spec.normalize = false;
  const auto scene = render(spec);

  // W is rotation invariant, so each stem's stereo IR is the same on both
  // channels: L = R = p*sqrt(2)*stem.
  const double g = 0.5 * std::sqrt(2.0);
  for (const auto& [name, audio] : scene.stems_stereo) {
    const auto& src = name == "violin" ? spec.stems[0].audio : spec.stems[1].audio;
    for (std::size_t n = 0; n < src.length(); ++n) {
      CHECK(audio.channels[0][n] == doctest::Approx(g * src.channels[0][n]).epsilon(1e-12));
      CHECK(audio.channels[0][n] == audio.channels[1][n]);
    }
  }

  // Missing IR in reverb mode.
  SceneSpec broken = spec;
  broken.ir.reset();
  CHECK_THROWS_AS(render(broken), MissingImpulseResponse);
}

TEST_CASE("smr reference") {
  const int rate = 8000;
  const std::size_t len = 4 * 8000;

  SUBCASE("single stem hits the cap") {
    SceneSpec spec;
    spec.stems.push_back({"violin", noise_mono(len, rate, 1)});
    spec.mode = RenderMode::anechoic;
    const auto scene = render(spec);
    CHECK(smr_reference(scene, "violin") == 100.0);
    CHECK_THROWS_AS(smr_reference(scene, "tuba"), UnknownInstrument);
  }

  SUBCASE("equal-energy masker sits near 0 dB") {
    SceneSpec spec;
    spec.stems.push_back({"violin", noise_mono(len, rate, 21)});
    spec.stems.push_back({"flute", noise_mono(len, rate, 22)});
    spec.mode = RenderMode::anechoic;
    spec.spacing_deg = 0.0;
    const auto scene = render(spec);
    CHECK(std::abs(smr_reference(scene, "violin") - 0.0) < 0.5);
  }

  SUBCASE("masker at 10x energy sits near -10 dB") {
    SceneSpec spec;
    spec.stems.push_back({"violin", noise_mono(len, rate, 31)});
    spec.stems.push_back({"flute", noise_mono(len, rate, 32, 0.2 * std::sqrt(10.0))});
    spec.mode = RenderMode::anechoic;
    spec.spacing_deg = 0.0;
    const auto scene = render(spec);
    CHECK(std::abs(smr_reference(scene, "violin") - (-10.0)) < 0.5);
  }
}
