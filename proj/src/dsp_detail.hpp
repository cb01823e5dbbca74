#ifndef MDALIGN_DSP_DETAIL_HPP_
#define MDALIGN_DSP_DETAIL_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "mdalign/dsp.hpp"

// Scalar per-element expressions shared by the serial and OpenMP kernel
// variants. Keeping a single definition guarantees both paths produce
// bitwise-identical output.

namespace mdalign::dsp::detail {

constexpr int kResampleHalfTaps = 32;  // 64 taps total at unity ratio
constexpr double kKaiserBeta = 8.6;

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

struct ResamplePlan {
  double step;       // input samples advanced per output sample
  double scale;      // anti-alias cutoff scale, min(1, out/in)
  double half_width; // filter half-width in input samples
  std::size_t out_len;
};

inline ResamplePlan make_resample_plan(std::size_t in_len, double in_rate,
                                       double out_rate) {
  ResamplePlan p;
  p.step = in_rate / out_rate;
  p.scale = out_rate < in_rate ? out_rate / in_rate : 1.0;
  p.half_width = kResampleHalfTaps / p.scale;
  p.out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(in_len) * out_rate / in_rate));
  return p;
}

inline double resample_one(const std::vector<double>& in,
                           const ResamplePlan& p, std::size_t n) {
  const double center = n * p.step;
  const auto lo = static_cast<std::ptrdiff_t>(std::ceil(center - p.half_width));
  const auto hi = static_cast<std::ptrdiff_t>(std::floor(center + p.half_width));
  const double i0_beta = bessel_i0(kKaiserBeta);
  double acc = 0.0;
  for (std::ptrdiff_t m = lo; m <= hi; ++m) {
    if (m < 0 || m >= static_cast<std::ptrdiff_t>(in.size())) continue;
    const double d = m - center;
    const double u = d / p.half_width;  // in [-1, 1]
    const double win =
        bessel_i0(kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
    acc += in[m] * sinc(p.scale * d) * win;
  }
  return p.scale * acc;
}

// numpy-style 'reflect' index mapping (edge sample not repeated)
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
  const auto sn = static_cast<std::ptrdiff_t>(n);
  if (sn == 1) return 0;
  const std::ptrdiff_t period = 2 * (sn - 1);
  std::ptrdiff_t m = i % period;
  if (m < 0) m += period;
  if (m >= sn) m = period - m;
  return static_cast<std::size_t>(m);
}

inline double smooth_one(const std::vector<double>& v,
                         const std::vector<double>& kernel, std::size_t i) {
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  double acc = 0.0;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    const std::ptrdiff_t src =
        static_cast<std::ptrdiff_t>(i) + static_cast<std::ptrdiff_t>(j) - radius;
    acc += kernel[j] * v[reflect_index(src, v.size())];
  }
  return acc;
}

// Log-magnitude spectrum of one Hann-windowed frame; window/2 + 1 bins.
inline std::vector<double> frame_logmag(const std::vector<double>& samples,
                                        std::size_t start,
                                        const StftParams& p) {
  std::vector<std::complex<double>> buf(p.window);
  for (std::size_t i = 0; i < p.window; ++i) {
    const double hann =
        0.5 * (1.0 - std::cos(2.0 * M_PI * i / (p.window - 1)));
    buf[i] = samples[start + i] * hann;
  }
  fft(buf);
  std::vector<double> out(p.window / 2 + 1);
  for (std::size_t b = 0; b < out.size(); ++b)
    out[b] = std::log1p(p.compression * std::abs(buf[b]));
  return out;
}

inline double flux_between(const std::vector<double>& prev,
                           const std::vector<double>& cur) {
  double acc = 0.0;
  for (std::size_t b = 0; b < cur.size(); ++b) {
    const double d = cur[b] - prev[b];
    if (d > 0.0) acc += d;
  }
  return acc;
}

inline std::size_t stft_frame_count(std::size_t n_samples,
                                    const StftParams& p) {
  if (n_samples < p.window) return 0;
  return 1 + (n_samples - p.window) / p.hop;
}

inline double autocorr_one(const std::vector<double>& env, std::size_t lag) {
  double acc = 0.0;
  for (std::size_t t = 0; t + lag < env.size(); ++t) acc += env[t] * env[t + lag];
  return acc;
}

}  // namespace mdalign::dsp::detail

#endif  // MDALIGN_DSP_DETAIL_HPP_
