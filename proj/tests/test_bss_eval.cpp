#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cadenza/bss_eval.hpp"
#include "cadenza/errors.hpp"
#include "cadenza/rng.hpp"

using namespace cadenza;

namespace {

std::vector<double> white_noise(std::size_t n, std::uint64_t seed, double rms = 0.25) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal() * rms;
  return v;
}

// Dense Gauss elimination with partial pivoting; the oracle for the Levinson
// path. Test-only.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<std::vector<double>> toeplitz_from(const std::vector<double>& col) {
  const std::size_t n = col.size();
  std::vector<std::vector<double>> t(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t[i][j] = col[static_cast<std::size_t>(std::abs(static_cast<long>(i) - static_cast<long>(j)))];
  return t;
}

}  // namespace

TEST_CASE("median conventions") {
  CHECK(median({0.1, 0.5, 1.0}) == 0.5);
  CHECK(median({1.0}) == 1.0);
  CHECK(median({1.0, 3.0}) == 2.0);
  CHECK(median({3.0, 1.0, 2.0, 4.0}) == 2.5);
  CHECK_THROWS_AS(median({}), InvalidArgument);
}

TEST_CASE("levinson matches dense gaussian elimination") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed + 40);
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 64));
    // Build a well-conditioned SPD Toeplitz column from a signal autocorrelation.
    const auto sig = white_noise(512, seed + 200, 1.0);
    std::vector<double> col(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i + k < sig.size(); ++i) col[k] += sig[i] * sig[i + k];
    col[0] *= 1.0 + 1e-8;
    std::vector<double> rhs(n);
    for (auto& v : rhs) v = rng.uniform(-1, 1);

    const auto fast = levinson_solve(col, rhs);
    const auto slow = dense_solve(toeplitz_from(col), rhs);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      num += (fast[i] - slow[i]) * (fast[i] - slow[i]);
      den += slow[i] * slow[i];
    }
    CHECK(std::sqrt(num / den) < 1e-8);
  }
}

TEST_CASE("projection sdr caps on perfect, scaled and delayed estimates") {
  const std::size_t n = 8000;
  auto ref = white_noise(n, 3);
  // Zero tail so that a delayed copy stays inside the reference subspace.
  for (std::size_t i = n - 600; i < n; ++i) ref[i] = 0.0;

  CHECK(projection_sdr(ref, ref).value() == 100.0);

  auto scaled = ref;
  for (auto& v : scaled) v *= 2.0;
  CHECK(projection_sdr(ref, scaled).value() == 100.0);

  std::vector<double> delayed(n, 0.0);
  const std::size_t delay = 100;
  for (std::size_t i = delay; i < n; ++i) delayed[i] = ref[i - delay];
  CHECK(projection_sdr(ref, delayed).value() == 100.0);
}

TEST_CASE("projection sdr of noisy estimate tracks the noise level") {
  const std::size_t n = 44100;
  for (double target_db : {10.0, 20.0}) {
    double total = 0.0;
    const int trials = 4;
    for (int trial = 0; trial < trials; ++trial) {
      const auto ref = white_noise(n, 50 + static_cast<std::uint64_t>(trial));
      const auto noise = white_noise(n, 150 + static_cast<std::uint64_t>(trial));
      double ref_e = 0, noise_e = 0;
      for (std::size_t i = 0; i < n; ++i) {
        ref_e += ref[i] * ref[i];
        noise_e += noise[i] * noise[i];
      }
      const double k = std::sqrt(ref_e / noise_e * std::pow(10.0, -target_db / 10.0));
      auto est = ref;
      for (std::size_t i = 0; i < n; ++i) est[i] += k * noise[i];
      total += projection_sdr(ref, est).value();
    }
    CHECK(std::abs(total / trials - target_db) < 0.5);
  }
}

TEST_CASE("projection sdr edge cases") {
  const std::size_t n = 2048;
  const auto ref = white_noise(n, 9);

  // Silent reference -> undefined.
  CHECK(!projection_sdr(std::vector<double>(n, 0.0), ref).has_value());

  // Silent estimate -> defined, clamped at the bottom.
  CHECK(projection_sdr(ref, std::vector<double>(n, 0.0)).value() == -100.0);

  // Scale invariance in both arguments.
  auto est = white_noise(n, 10);
  const double base = projection_sdr(ref, est).value();
  auto est3 = est;
  for (auto& v : est3) v *= 3.7;
  CHECK(std::abs(projection_sdr(ref, est3).value() - base) < 1e-6);
  auto ref2 = ref;
  for (auto& v : ref2) v *= 0.21;
  CHECK(std::abs(projection_sdr(ref2, est).value() - base) < 1e-6);

  CHECK_THROWS_AS(projection_sdr(ref, white_noise(n + 1, 11)), InvalidArgument);
  CHECK_THROWS_AS(projection_sdr(white_noise(100, 1), white_noise(100, 2), 512),
                  InvalidArgument);
}

TEST_CASE("projection sdr monotone in noise level") {
  const std::size_t n = 8192;
  const auto ref = white_noise(n, 31);
  const auto noise = white_noise(n, 32);
  double prev = 1e9;
  for (double sigma : {0.01, 0.05, 0.1, 0.5, 1.0}) {
    auto est = ref;
    for (std::size_t i = 0; i < n; ++i) est[i] += sigma * noise[i];
    const double sdr = projection_sdr(ref, est).value();
    CHECK(sdr <= prev);
    prev = sdr;
  }
}

TEST_CASE("track sdr medians and undefined-frame rule") {
  // 3 frames of 1 s at 4 kHz (frame >= 512 taps): frame 0 perfect estimate,
  // frame 1 silent reference (excluded), frame 2 silent estimate.
  const int rate = 4096;
  const std::size_t frame = 4096;
  AudioBuffer ref(2, 3 * frame, rate), est(2, 3 * frame, rate);
  Rng rng(77);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < frame; ++i) {
      const double v = rng.normal() * 0.3;
      ref.channels[c][i] = v;
      est.channels[c][i] = v;  // frame 0: est == ref
    }
    for (std::size_t i = frame; i < 2 * frame; ++i) {
      ref.channels[c][i] = 0.0;  // frame 1: silent reference
      est.channels[c][i] = rng.normal() * 0.3;
    }
    for (std::size_t i = 2 * frame; i < 3 * frame; ++i) {
      ref.channels[c][i] = rng.normal() * 0.3;
      est.channels[c][i] = 0.0;  // frame 2: silent estimate
    }
  }
  const auto result = track_sdr(ref, est, 1.0);
  REQUIRE(result.frames.size() == 3);
  CHECK(result.frames[0].channel_median.value() == 100.0);
  CHECK(!result.frames[1].channel_median.has_value());
  CHECK(result.frames[2].channel_median.value() == -100.0);
  // Median over {100, -100}: the undefined frame is excluded.
  CHECK(result.track_median == 0.0);

  // All-silent reference -> no valid frames.
  AudioBuffer zeros(2, 3 * frame, rate);
  CHECK_THROWS_AS(track_sdr(zeros, est, 1.0), NoValidFrames);
}

TEST_CASE("track sdr channel median uses defined channels only") {
  const int rate = 4096;
  const std::size_t frame = 4096;
  AudioBuffer ref(2, frame, rate), est(2, frame, rate);
  Rng rng(78);
  for (std::size_t i = 0; i < frame; ++i) {
    const double v = rng.normal() * 0.3;
    ref.channels[0][i] = v;
    est.channels[0][i] = v;
    ref.channels[1][i] = 0.0;  // silent channel
    est.channels[1][i] = rng.normal() * 0.3;
  }
  const auto result = track_sdr(ref, est, 1.0);
  CHECK(result.frames[0].per_channel_sdr[0].value() == 100.0);
  CHECK(!result.frames[0].per_channel_sdr[1].has_value());
  CHECK(result.track_median == 100.0);
}

TEST_CASE("dataset sdr median across tracks") {
  CHECK(dataset_sdr({{"a", 0.1}, {"b", 0.5}, {"c", 1.0}}) == 0.5);
  CHECK(dataset_sdr({{"solo", 3.25}}) == 3.25);
  CHECK(dataset_sdr({{"a", 1.0}, {"b", 3.0}}) == 2.0);
  CHECK_THROWS_AS(dataset_sdr({}), InvalidArgument);
}

TEST_CASE("pooled t test") {
  const auto r = t_test({1, 2, 3}, {2, 3, 4});
  CHECK(r.t == doctest::Approx(-1.224744871391589).epsilon(1e-10));
  CHECK(r.df == 4.0);
  CHECK(r.p == doctest::Approx(0.2878641347266908).epsilon(1e-6));

  // Antisymmetry is exact.
  const auto fwd = t_test({1.5, 2.5, 3.0, 4.0}, {2.0, 2.2, 5.0});
  const auto rev = t_test({2.0, 2.2, 5.0}, {1.5, 2.5, 3.0, 4.0});
  CHECK(fwd.t == -rev.t);
  CHECK(fwd.p == rev.p);

  // Identical samples: t = 0, p = 1.
  const auto same = t_test({1, 2, 3, 4}, {1, 2, 3, 4});
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);

  // Two 879-sample groups give the integer df from the pooled formula.
  std::vector<double> a(879), b(879);
  Rng rng(5);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal() + 0.1;
  CHECK(t_test(a, b).df == 1756.0);

  CHECK_THROWS_AS(t_test({1.0}, {1.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(t_test({2.0, 2.0}, {3.0, 3.0}), DegenerateSamples);
}

TEST_CASE("welch t test differs in df") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b = {1.0, 1.1, 0.9, 1.05};
  const auto w = t_test(a, b, TTestMethod::welch);
  const auto p = t_test(a, b, TTestMethod::pooled);
  CHECK(w.df < p.df);
  CHECK(w.df > 0.0);
}
