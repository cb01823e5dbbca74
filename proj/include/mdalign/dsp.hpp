#ifndef MDALIGN_DSP_HPP_
#define MDALIGN_DSP_HPP_

#include <complex>
#include <cstddef>
#include <vector>

// Numeric kernels shared by the pipeline. Each kernel exists twice:
// the production version in mdalign::dsp parallelizes independent output
// elements with OpenMP, and mdalign::dsp::serial keeps a plain-loop
// reference used by the parity tests and the kernel benchmark. Both
// versions compute every output element with the same scalar expression,
// so results are bitwise identical regardless of thread count.

namespace mdalign::dsp {

// In-place iterative radix-2 FFT. data.size() must be a power of two.
void fft(std::vector<std::complex<double>>& data);

// Zeroth-order modified Bessel function of the first kind (Kaiser window).
double bessel_i0(double x);

// Unit-sum Gaussian kernel truncated at +-3*sigma, odd length.
std::vector<double> gaussian_kernel(double sigma);

struct StftParams {
  std::size_t window = 1024;
  std::size_t hop = 160;
  double compression = 1000.0;  // log(1 + compression * |X|)
};

// Band-limited sinc resampling with a Kaiser window, >=64 taps.
std::vector<double> resample(const std::vector<double>& in, double in_rate,
                             double out_rate);

// Convolution with a unit-sum Gaussian, reflect-padded; output length ==
// input length.
std::vector<double> gaussian_smooth(const std::vector<double>& v,
                                    double sigma);

// Per-frame half-wave-rectified spectral flux of the log-magnitude STFT.
// Frame i compares windows starting at i*hop and (i+1)*hop; output has
// n_frames - 1 values (0 when fewer than two frames fit).
std::vector<double> spectral_flux(const std::vector<double>& samples,
                                  const StftParams& p);

// Raw autocorrelation r[lag] = sum_t env[t] * env[t+lag] for lag in
// [min_lag, max_lag]; result[k] corresponds to lag min_lag + k.
std::vector<double> autocorrelation(const std::vector<double>& env,
                                    std::size_t min_lag,
                                    std::size_t max_lag);

namespace serial {

std::vector<double> resample(const std::vector<double>& in, double in_rate,
                             double out_rate);
std::vector<double> gaussian_smooth(const std::vector<double>& v,
                                    double sigma);
std::vector<double> spectral_flux(const std::vector<double>& samples,
                                  const StftParams& p);
std::vector<double> autocorrelation(const std::vector<double>& env,
                                    std::size_t min_lag,
                                    std::size_t max_lag);

}  // namespace serial

}  // namespace mdalign::dsp

#endif  // MDALIGN_DSP_HPP_
