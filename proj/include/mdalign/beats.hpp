#ifndef MDALIGN_BEATS_HPP_
#define MDALIGN_BEATS_HPP_

#include <vector>

#include "mdalign/audio.hpp"

namespace mdalign {

struct BeatTrackerConfig {
  std::size_t stft_window = 1024;   // 64 ms at 16 kHz
  std::size_t stft_hop = 160;       // 10 ms
  double log_compression = 1000.0;
  double norm_window_s = 0.5;       // moving-mean subtraction span
  double min_bpm = 40.0;
  double max_bpm = 240.0;
  double prior_center_bpm = 120.0;
  double prior_octave_spread = 1.0;
  double transition_weight = 100.0;  // lambda in the DP objective
};

struct OnsetEnvelope {
  std::vector<double> values;  // non-negative novelty per frame
  double hop = 0.0;            // seconds per frame
  double start_offset = 0.0;   // seconds of the first frame's event time
};

struct BeatGrid {
  std::vector<double> beats;  // strictly increasing, seconds
  double tempo_bpm = 0.0;
  double source_duration = 0.0;
};

// Spectral-flux onset strength: Hann STFT, log-magnitude compression,
// half-wave-rectified per-bin differences, local moving-mean subtraction.
// Requires buf at the canonical rate and at least 0.5 s of audio.
OnsetEnvelope onset_envelope(const AudioBuffer& buf,
                             const BeatTrackerConfig& cfg = {});

// Global tempo from prior-weighted autocorrelation of the envelope.
double estimate_tempo(const OnsetEnvelope& env,
                      const BeatTrackerConfig& cfg = {});

// Dynamic-programming beat alignment at the given tempo; beats snapped to
// envelope frame times.
BeatGrid track_beats(const OnsetEnvelope& env, double tempo_bpm,
                     const BeatTrackerConfig& cfg = {});

// decode -> (resample) -> envelope -> tempo -> beats convenience pipeline.
BeatGrid track_beats_of(const AudioBuffer& buf,
                        const BeatTrackerConfig& cfg = {});

}  // namespace mdalign

#endif  // MDALIGN_BEATS_HPP_
