// Times the OpenMP kernels against their serial references on synthetic
// signals and reports speedups.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "mdalign/dsp.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-16s serial %8.2f ms   omp %8.2f ms   speedup %5.2fx\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both lanes are serial\n");
#endif

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  std::vector<double> audio(16000 * 30);  // 30 s at 16 kHz
  for (double& s : audio) s = dist(rng);

  double sink = 0.0;

  {
    std::vector<double> out;
    const double s = time_best_of(3, [&] {
      out = mdalign::dsp::serial::resample(audio, 44100.0, 16000.0);
    });
    const double p = time_best_of(3, [&] {
      out = mdalign::dsp::resample(audio, 44100.0, 16000.0);
    });
    sink += out[0];
    report("resample", s, p);
  }

  {
    mdalign::dsp::StftParams params;
    std::vector<double> out;
    const double s = time_best_of(
        3, [&] { out = mdalign::dsp::serial::spectral_flux(audio, params); });
    const double p = time_best_of(
        3, [&] { out = mdalign::dsp::spectral_flux(audio, params); });
    sink += out[0];
    report("spectral_flux", s, p);
  }

  {
    std::vector<double> signal(200000);
    for (double& s : signal) s = dist(rng);
    std::vector<double> out;
    const double s = time_best_of(
        3, [&] { out = mdalign::dsp::serial::gaussian_smooth(signal, 25.0); });
    const double p = time_best_of(
        3, [&] { out = mdalign::dsp::gaussian_smooth(signal, 25.0); });
    sink += out[0];
    report("gaussian_smooth", s, p);
  }

  {
    std::vector<double> env(20000);
    for (double& s : env) s = std::abs(dist(rng));
    std::vector<double> out;
    const double s = time_best_of(3, [&] {
      out = mdalign::dsp::serial::autocorrelation(env, 25, 1500);
    });
    const double p = time_best_of(
        3, [&] { out = mdalign::dsp::autocorrelation(env, 25, 1500); });
    sink += out[0];
    report("autocorrelation", s, p);
  }

  std::printf("checksum %g\n", sink);
  return 0;
}
