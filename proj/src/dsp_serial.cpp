#include "dsp_detail.hpp"

namespace mdalign::dsp::serial {

using namespace mdalign::dsp::detail;

std::vector<double> resample(const std::vector<double>& in, double in_rate,
                             double out_rate) {
  if (in_rate == out_rate) return in;
  const ResamplePlan plan = make_resample_plan(in.size(), in_rate, out_rate);
  std::vector<double> out(plan.out_len);
  for (std::size_t n = 0; n < plan.out_len; ++n)
    out[n] = resample_one(in, plan, n);
  return out;
}

std::vector<double> gaussian_smooth(const std::vector<double>& v,
                                    double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = smooth_one(v, kernel, i);
  return out;
}

std::vector<double> spectral_flux(const std::vector<double>& samples,
                                  const StftParams& p) {
  const std::size_t n_frames = stft_frame_count(samples.size(), p);
  if (n_frames < 2) return {};
  std::vector<std::vector<double>> spectra(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f)
    spectra[f] = frame_logmag(samples, f * p.hop, p);
  std::vector<double> flux(n_frames - 1);
  for (std::size_t f = 0; f + 1 < n_frames; ++f)
    flux[f] = flux_between(spectra[f], spectra[f + 1]);
  return flux;
}

std::vector<double> autocorrelation(const std::vector<double>& env,
                                    std::size_t min_lag,
                                    std::size_t max_lag) {
  std::vector<double> out(max_lag - min_lag + 1);
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag)
    out[lag - min_lag] = autocorr_one(env, lag);
  return out;
}

}  // namespace mdalign::dsp::serial
