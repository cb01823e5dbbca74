#include "dsp_detail.hpp"

namespace mdalign::dsp {

using namespace detail;

std::vector<double> resample(const std::vector<double>& in, double in_rate,
                             double out_rate) {
  if (in_rate == out_rate) return in;
  const ResamplePlan plan = make_resample_plan(in.size(), in_rate, out_rate);
  std::vector<double> out(plan.out_len);
  const auto n_out = static_cast<std::ptrdiff_t>(plan.out_len);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < n_out; ++n)
    out[n] = resample_one(in, plan, static_cast<std::size_t>(n));
  return out;
}

std::vector<double> gaussian_smooth(const std::vector<double>& v,
                                    double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  std::vector<double> out(v.size());
  const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = smooth_one(v, kernel, static_cast<std::size_t>(i));
  return out;
}

std::vector<double> spectral_flux(const std::vector<double>& samples,
                                  const StftParams& p) {
  const std::size_t n_frames = stft_frame_count(samples.size(), p);
  if (n_frames < 2) return {};
  std::vector<std::vector<double>> spectra(n_frames);
  const auto nf = static_cast<std::ptrdiff_t>(n_frames);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < nf; ++f)
    spectra[f] = frame_logmag(samples, static_cast<std::size_t>(f) * p.hop, p);
  std::vector<double> flux(n_frames - 1);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < nf - 1; ++f)
    flux[f] = flux_between(spectra[f], spectra[f + 1]);
  return flux;
}

std::vector<double> autocorrelation(const std::vector<double>& env,
                                    std::size_t min_lag,
                                    std::size_t max_lag) {
  std::vector<double> out(max_lag - min_lag + 1);
  const auto lo = static_cast<std::ptrdiff_t>(min_lag);
  const auto hi = static_cast<std::ptrdiff_t>(max_lag);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t lag = lo; lag <= hi; ++lag)
    out[lag - lo] = autocorr_one(env, static_cast<std::size_t>(lag));
  return out;
}

}  // namespace mdalign::dsp
