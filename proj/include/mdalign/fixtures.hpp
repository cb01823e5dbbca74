#ifndef MDALIGN_FIXTURES_HPP_
#define MDALIGN_FIXTURES_HPP_

#include <string>
#include <vector>

#include "mdalign/motion.hpp"

namespace mdalign {

// Synthetic inputs used by the tests, the acceptance suite, and the
// shipped demonstration corpus.

struct ClickTrack {
  std::vector<double> samples;
  std::vector<double> click_times;  // ground truth, seconds
  double sample_rate = 0.0;
};

// Short decaying tone bursts on a regular beat grid. noise_db is the
// white-noise floor relative to the click amplitude in dB; pass a very
// negative value (e.g. -200) for a clean track.
ClickTrack make_click_track(double bpm, double duration_s,
                            double sample_rate = 16000.0,
                            double noise_db = -200.0, unsigned seed = 1,
                            double first_click_s = 0.05);

// Keypoint stream whose inter-frame displacement pulses at the given
// event times (direction alternates so the skeleton oscillates in place).
// phase_shift_s moves every pulse by a constant offset.
KeypointSequence make_pulsing_keypoints(const std::vector<double>& event_times,
                                        double duration_s, double fps = 24.0,
                                        std::size_t num_keypoints = 17,
                                        double phase_shift_s = 0.0,
                                        double pulse_width_s = 0.04,
                                        double amplitude_px = 12.0);

void write_keypoints_json(const std::string& path,
                          const KeypointSequence& seq);

// 6-clip, 2-model demonstration corpus (WAVs, keypoint JSONs and
// manifest.json) written under dir. Returns the manifest path.
std::string write_demo_corpus(const std::string& dir);

}  // namespace mdalign

#endif  // MDALIGN_FIXTURES_HPP_
