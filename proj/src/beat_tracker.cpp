#include "mdalign/beats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdalign/dsp.hpp"
#include "mdalign/errors.hpp"

namespace mdalign {

namespace {

// Moving-mean subtraction with a centered window, clamped at 0.
std::vector<double> local_normalize(const std::vector<double>& v,
                                    std::size_t win) {
  if (v.empty()) return {};
  const auto radius = static_cast<std::ptrdiff_t>(win / 2);
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  std::vector<double> prefix(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
  std::vector<double> out(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - radius);
    const std::ptrdiff_t hi = std::min(n - 1, i + radius);
    const double mean = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1);
    out[i] = std::max(0.0, v[i] - mean);
  }
  return out;
}

double bpm_of_lag(std::size_t lag, double hop) { return 60.0 / (lag * hop); }

}  // namespace

OnsetEnvelope onset_envelope(const AudioBuffer& buf,
                             const BeatTrackerConfig& cfg) {
  if (buf.duration() < 0.5)
    throw AudioTooShort("need >= 0.5 s of audio, got " +
                        std::to_string(buf.duration()) + " s");
  dsp::StftParams p;
  p.window = cfg.stft_window;
  p.hop = cfg.stft_hop;
  p.compression = cfg.log_compression;

  OnsetEnvelope env;
  env.hop = cfg.stft_hop / buf.sample_rate;
  // Flux value f compares frames f and f+1; the novelty is registered when
  // the analysis window first reaches the event, i.e. near the end of
  // frame f+1.
  env.start_offset = static_cast<double>(cfg.stft_hop + cfg.stft_window) /
                     buf.sample_rate;
  env.values = dsp::spectral_flux(buf.samples, p);

  const auto norm_win = static_cast<std::size_t>(
      std::lround(cfg.norm_window_s / env.hop));
  env.values = local_normalize(env.values, std::max<std::size_t>(1, norm_win));
  return env;
}

double estimate_tempo(const OnsetEnvelope& env, const BeatTrackerConfig& cfg) {
  if (env.values.size() * env.hop < 2.0)
    throw AudioTooShort("envelope shorter than 2 s");

  const auto min_lag = static_cast<std::size_t>(
      std::ceil(60.0 / (cfg.max_bpm * env.hop)));
  const auto max_lag = std::min(
      env.values.size() - 1,
      static_cast<std::size_t>(std::floor(60.0 / (cfg.min_bpm * env.hop))));
  if (min_lag > max_lag) throw AudioTooShort("envelope too short for tempo lags");

  const std::vector<double> ac =
      dsp::autocorrelation(env.values, min_lag, max_lag);
  double energy = 0.0;
  for (double v : env.values) energy += v * v;

  double best_raw = 0.0, best_weighted = -1.0, best_bpm = 0.0;
  for (std::size_t k = 0; k < ac.size(); ++k) {
    best_raw = std::max(best_raw, ac[k]);
    const double bpm = bpm_of_lag(min_lag + k, env.hop);
    const double octaves =
        std::log2(bpm / cfg.prior_center_bpm) / cfg.prior_octave_spread;
    const double weighted = ac[k] * std::exp(-0.5 * octaves * octaves);
    if (weighted > best_weighted) {
      best_weighted = weighted;
      best_bpm = bpm;
    }
  }
  if (energy <= 0.0 || best_raw < 1e-6 * energy)
    throw NoPeriodicity("flat onset envelope");
  return best_bpm;
}

BeatGrid track_beats(const OnsetEnvelope& env, double tempo_bpm,
                     const BeatTrackerConfig& cfg) {
  const auto n = static_cast<std::ptrdiff_t>(env.values.size());
  if (n == 0) throw AudioTooShort("empty onset envelope");

  const double period = 60.0 / (tempo_bpm * env.hop);  // frames per beat
  const auto lo_lag = std::max<std::ptrdiff_t>(
      1, static_cast<std::ptrdiff_t>(std::lround(period / 2.0)));
  const auto hi_lag = static_cast<std::ptrdiff_t>(std::lround(period * 2.0));

  std::vector<double> cumscore(env.values.begin(), env.values.end());
  std::vector<std::ptrdiff_t> backlink(n, -1);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    std::ptrdiff_t best_j = -1;
    for (std::ptrdiff_t lag = lo_lag; lag <= hi_lag && i - lag >= 0; ++lag) {
      const double dev = std::log(lag / period);
      const double cand = cumscore[i - lag] - cfg.transition_weight * dev * dev;
      if (cand > best) {
        best = cand;
        best_j = i - lag;
      }
    }
    // A chain may start anywhere at no cost; only extend it when doing so
    // beats a fresh start.
    if (best_j >= 0 && best > 0.0) {
      cumscore[i] = env.values[i] + best;
      backlink[i] = best_j;
    }
  }

  // First global maximum; trailing silence strictly decays the chain score
  // so this lands on the last supported beat.
  std::ptrdiff_t end = 0;
  for (std::ptrdiff_t i = 1; i < n; ++i)
    if (cumscore[i] > cumscore[end]) end = i;

  std::vector<std::ptrdiff_t> chain;
  for (std::ptrdiff_t i = end; i >= 0; i = backlink[i]) {
    chain.push_back(i);
    if (backlink[i] < 0) break;
  }
  std::reverse(chain.begin(), chain.end());

  // Trim leading/trailing beats whose onset support is far below the
  // median; the DP extends chains through noise floors at the tempo prior
  // and those frames carry no real beat.
  std::vector<double> support;
  for (std::ptrdiff_t i : chain) support.push_back(env.values[i]);
  std::nth_element(support.begin(), support.begin() + support.size() / 2,
                   support.end());
  const double weak = 0.25 * support[support.size() / 2];
  std::size_t lo = 0, hi = chain.size();
  while (lo < hi && env.values[chain[lo]] < weak) ++lo;
  while (hi > lo && env.values[chain[hi - 1]] < weak) --hi;

  std::vector<double> beats;
  for (std::size_t k = lo; k < hi; ++k)
    beats.push_back(env.start_offset + chain[k] * env.hop);

  BeatGrid grid;
  grid.tempo_bpm = tempo_bpm;
  grid.source_duration = env.start_offset + (n - 1) * env.hop;
  grid.beats = std::move(beats);
  return grid;
}

BeatGrid track_beats_of(const AudioBuffer& buf, const BeatTrackerConfig& cfg) {
  const AudioBuffer canonical = resample(buf, kCanonicalRate);
  const OnsetEnvelope env = onset_envelope(canonical, cfg);
  const double tempo = estimate_tempo(env, cfg);
  BeatGrid grid = track_beats(env, tempo, cfg);
  grid.source_duration = canonical.duration();
  return grid;
}

}  // namespace mdalign
