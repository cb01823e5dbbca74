#ifndef MDALIGN_MOTION_HPP_
#define MDALIGN_MOTION_HPP_

#include <string>
#include <vector>

namespace mdalign {

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double confidence = 1.0;
};

struct KeypointSequence {
  std::vector<std::vector<Keypoint>> frames;  // T frames x K keypoints
  double fps = 0.0;
  int width = 0;
  int height = 0;
  std::string layout;  // free-form tag, e.g. "coco17"

  std::size_t num_frames() const { return frames.size(); }
  std::size_t num_keypoints() const {
    return frames.empty() ? 0 : frames.front().size();
  }
};

struct VelocitySignal {
  std::vector<double> values;  // T-1 speeds, pixels per frame
  double fps = 0.0;
};

struct AccentTrack {
  std::vector<double> accents;  // strictly increasing, seconds
  std::vector<double> smoothed; // smoothed velocity values
  double sigma_frames = 0.0;
};

struct MotionConfig {
  double conf_threshold = 0.3;
  double sigma_frames = 2.0;       // Gaussian smoothing width
  double min_separation_s = 0.2;   // accent suppression radius
  double prominence_frac = 0.1;    // relative to max of the signal
};

// Parse and validate the keypoint JSON schema:
// {"fps", "width", "height", "layout", "frames": [[[x,y,conf] x K] x T]}.
KeypointSequence load_keypoints(const std::string& path);
KeypointSequence parse_keypoints_json(const std::string& text,
                                      const std::string& origin = "<memory>");

// Mean inter-frame keypoint displacement; pairs where a keypoint falls
// below conf_threshold in either frame drop that keypoint, and pairs with
// no valid keypoint are interpolated from valid neighbors.
VelocitySignal velocity(const KeypointSequence& seq, double conf_threshold);

VelocitySignal smooth(const VelocitySignal& v, double sigma_frames);

// Local maxima of the smoothed signal with relative-prominence gating and
// minimum-separation suppression. Index i maps to time i/fps.
AccentTrack detect_accents(const VelocitySignal& v, double min_separation_s,
                           double prominence_frac);

// load -> velocity -> smooth -> accents convenience pipeline.
AccentTrack accents_of(const KeypointSequence& seq,
                       const MotionConfig& cfg = {});

}  // namespace mdalign

#endif  // MDALIGN_MOTION_HPP_
