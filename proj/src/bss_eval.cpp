#include "cadenza/bss_eval.hpp"

#include <algorithm>
#include <cmath>

#include "cadenza/errors.hpp"
#include "cadenza/fft.hpp"

namespace cadenza {
namespace {

constexpr double kSilenceEnergy = 1e-12;
constexpr double kSdrCap = 100.0;
constexpr double kRidgeFactor = 1e-10;

double clamp_db(double num, double den) {
  if (num <= 1e-300) return -kSdrCap;  // silent or fully unmatched estimate
  if (den <= 1e-300) return kSdrCap;
  const double db = 10.0 * std::log10(num / den);
  return std::min(kSdrCap, std::max(-kSdrCap, db));
}

std::optional<double> median_defined(const std::vector<std::optional<double>>& values) {
  std::vector<double> defined;
  for (const auto& v : values)
    if (v) defined.push_back(*v);
  if (defined.empty()) return std::nullopt;
  return median(std::move(defined));
}

// Regularized incomplete beta I_x(a, b) by continued fraction (Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// Two-sided p for Student's t with df degrees of freedom.
double student_p_two_sided(double t, double df) {
  if (df <= 0.0) return 1.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> levinson_solve(const std::vector<double>& first_column,
                                   const std::vector<double>& rhs) {
  const std::size_t n = first_column.size();
  if (n == 0 || rhs.size() != n)
    throw InvalidArgument("levinson_solve: size mismatch");
  const double t0 = first_column[0];
  if (t0 <= 0.0) throw InvalidArgument("levinson_solve: non-positive diagonal");

  std::vector<double> r(n), x(n, 0.0), y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) r[i] = first_column[i] / t0;
  x[0] = rhs[0] / t0;
  if (n == 1) return x;

  // Golub & Van Loan style recursion: y is the Yule-Walker vector for the
  // leading submatrix, beta the prediction error.
  y[0] = -r[1];
  double alpha = -r[1];
  double beta = 1.0;
  std::vector<double> scratch(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    beta *= (1.0 - alpha * alpha);
    if (beta == 0.0) throw InvalidArgument("levinson_solve: singular matrix");
    double mu = rhs[k + 1] / t0;
    for (std::size_t i = 0; i <= k; ++i) mu -= r[i + 1] * x[k - i];
    mu /= beta;
    for (std::size_t i = 0; i <= k; ++i) x[i] += mu * y[k - i];
    x[k + 1] = mu;
    if (k + 2 < n) {
      double a = -r[k + 2];
      for (std::size_t i = 0; i <= k; ++i) a -= r[i + 1] * y[k - i];
      a /= beta;
      for (std::size_t i = 0; i <= k; ++i) scratch[i] = y[i] + a * y[k - i];
      for (std::size_t i = 0; i <= k; ++i) y[i] = scratch[i];
      y[k + 1] = a;
      alpha = a;
    }
  }
  return x;
}

std::optional<double> projection_sdr(const std::vector<double>& reference,
                                     const std::vector<double>& estimate,
                                     int filter_len) {
  if (reference.size() != estimate.size())
    throw InvalidArgument("projection_sdr: length mismatch");
  if (filter_len < 1 || reference.size() < static_cast<std::size_t>(filter_len))
    throw InvalidArgument("projection_sdr: frame shorter than filter");

  double ref_energy = 0.0;
  for (double v : reference) ref_energy += v * v;
  if (ref_energy < kSilenceEnergy) return std::nullopt;

  const std::size_t flen = static_cast<std::size_t>(filter_len);
  // Normal equations over the zero-extended frame: Toeplitz autocorrelation
  // of the reference against the cross-correlation with the estimate.
  std::vector<double> autoc = fft_correlate(reference, reference, flen);
  std::vector<double> cross = fft_correlate(reference, estimate, flen);
  autoc[0] += kRidgeFactor * autoc[0];
  const std::vector<double> h = levinson_solve(autoc, cross);

  std::vector<double> s_target = fft_convolve(h, reference);
  double num = 0.0, den = 0.0;
  const std::size_t len = reference.size();
  for (std::size_t i = 0; i < s_target.size(); ++i) {
    const double s = s_target[i];
    const double e = (i < len ? estimate[i] : 0.0) - s;
    num += s * s;
    den += e * e;
  }
  return clamp_db(num, den);
}

TrackSdr track_sdr(const AudioBuffer& reference, const AudioBuffer& estimate,
                   double frame_s, int filter_len) {
  validate(reference);
  validate(estimate);
  if (reference.sample_rate != estimate.sample_rate)
    throw SampleRateMismatch("track_sdr: sample rates differ");
  if (reference.channel_count() != estimate.channel_count() ||
      reference.length() != estimate.length())
    throw InvalidArgument("track_sdr: shape mismatch");

  const std::size_t frame_len =
      static_cast<std::size_t>(std::lround(frame_s * reference.sample_rate));
  if (frame_len == 0) throw InvalidArgument("track_sdr: empty frame");
  const std::size_t n_frames = reference.length() / frame_len;

  TrackSdr result;
  std::vector<double> frame_medians;
  for (std::size_t f = 0; f < n_frames; ++f) {
    SdrFrame frame;
    frame.frame_index = static_cast<int>(f);
    for (int c = 0; c < reference.channel_count(); ++c) {
      const auto begin = reference.channels[c].begin() + static_cast<long>(f * frame_len);
      std::vector<double> ref_frame(begin, begin + static_cast<long>(frame_len));
      const auto ebegin = estimate.channels[c].begin() + static_cast<long>(f * frame_len);
      std::vector<double> est_frame(ebegin, ebegin + static_cast<long>(frame_len));
      frame.per_channel_sdr.push_back(projection_sdr(ref_frame, est_frame, filter_len));
    }
    frame.channel_median = median_defined(frame.per_channel_sdr);
    if (frame.channel_median) frame_medians.push_back(*frame.channel_median);
    result.frames.push_back(std::move(frame));
  }
  if (frame_medians.empty())
    throw NoValidFrames("track_sdr: no frame with a non-silent reference");
  result.track_median = median(std::move(frame_medians));
  return result;
}

double dataset_sdr(const std::map<std::string, double>& per_track) {
  if (per_track.empty()) throw InvalidArgument("dataset_sdr: no tracks");
  std::vector<double> values;
  values.reserve(per_track.size());
  for (const auto& [_, v] : per_track) values.push_back(v);
  return median(std::move(values));
}

TTestResult t_test(const std::vector<double>& samples_a,
                   const std::vector<double>& samples_b, TTestMethod method) {
  const std::size_t na = samples_a.size(), nb = samples_b.size();
  if (na < 2 || nb < 2) throw InvalidArgument("t_test: need at least 2 samples per group");

  auto mean_var = [](const std::vector<double>& s) {
    double m = 0.0;
    for (double v : s) m += v;
    m /= static_cast<double>(s.size());
    double var = 0.0;
    for (double v : s) var += (v - m) * (v - m);
    var /= static_cast<double>(s.size() - 1);
    return std::pair<double, double>{m, var};
  };
  const auto [ma, va] = mean_var(samples_a);
  const auto [mb, vb] = mean_var(samples_b);

  TTestResult result;
  if (method == TTestMethod::pooled) {
    const double df = static_cast<double>(na + nb - 2);
    const double sp2 = ((na - 1) * va + (nb - 1) * vb) / df;
    if (sp2 <= 0.0) throw DegenerateSamples("t_test: zero variance in both groups");
    result.t = (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
    result.df = df;
  } else {
    const double sa = va / static_cast<double>(na);
    const double sb = vb / static_cast<double>(nb);
    if (sa + sb <= 0.0) throw DegenerateSamples("t_test: zero variance in both groups");
    result.t = (ma - mb) / std::sqrt(sa + sb);
    result.df = (sa + sb) * (sa + sb) /
                (sa * sa / static_cast<double>(na - 1) + sb * sb / static_cast<double>(nb - 1));
  }
  result.p = student_p_two_sided(result.t, result.df);
  return result;
}

}  // namespace cadenza
