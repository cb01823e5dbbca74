#include "mdalign/motion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mdalign/dsp.hpp"
#include "mdalign/errors.hpp"

namespace mdalign {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* key,
                      const std::string& origin) {
  if (!j.contains(key) || !j[key].is_number())
    throw SchemaViolation(origin + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

}  // namespace

KeypointSequence parse_keypoints_json(const std::string& text,
                                      const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaViolation(origin + ": " + e.what());
  }
  if (!j.is_object()) throw SchemaViolation(origin + ": top level must be an object");

  KeypointSequence seq;
  seq.fps = require_number(j, "fps", origin);
  seq.width = static_cast<int>(require_number(j, "width", origin));
  seq.height = static_cast<int>(require_number(j, "height", origin));
  seq.layout = j.value("layout", std::string{});
  if (seq.fps <= 0.0) throw SchemaViolation(origin + ": fps must be > 0");

  if (!j.contains("frames") || !j["frames"].is_array())
    throw SchemaViolation(origin + ": missing 'frames' array");
  const auto& frames = j["frames"];
  if (frames.size() < 2)
    throw TooFewFrames(origin + ": need >= 2 frames, got " +
                       std::to_string(frames.size()));

  std::size_t expected_k = 0;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto& frame = frames[t];
    if (!frame.is_array() || frame.empty())
      throw SchemaViolation(origin + ": frame " + std::to_string(t) +
                            " must be a non-empty array");
    if (t == 0)
      expected_k = frame.size();
    else if (frame.size() != expected_k)
      throw InconsistentKeypointCount(
          origin + ": frame " + std::to_string(t) + " has " +
          std::to_string(frame.size()) + " keypoints, expected " +
          std::to_string(expected_k));
    std::vector<Keypoint> kps;
    kps.reserve(frame.size());
    for (const auto& kp : frame) {
      if (!kp.is_array() || kp.size() != 3 || !kp[0].is_number() ||
          !kp[1].is_number() || !kp[2].is_number())
        throw SchemaViolation(origin + ": keypoint must be [x, y, conf]");
      Keypoint p{kp[0].get<double>(), kp[1].get<double>(),
                 kp[2].get<double>()};
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw SchemaViolation(origin + ": non-finite coordinate");
      kps.push_back(p);
    }
    seq.frames.push_back(std::move(kps));
  }
  return seq;
}

KeypointSequence load_keypoints(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UnreadableFile(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_keypoints_json(ss.str(), path);
}

VelocitySignal velocity(const KeypointSequence& seq, double conf_threshold) {
  const std::size_t t_count = seq.num_frames();
  const std::size_t k_count = seq.num_keypoints();

  std::vector<double> values(t_count - 1, 0.0);
  std::vector<bool> valid(t_count - 1, false);
  for (std::size_t t = 0; t + 1 < t_count; ++t) {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < k_count; ++k) {
      const Keypoint& a = seq.frames[t][k];
      const Keypoint& b = seq.frames[t + 1][k];
      if (a.confidence < conf_threshold || b.confidence < conf_threshold)
        continue;
      acc += std::hypot(b.x - a.x, b.y - a.y);
      ++n;
    }
    if (n > 0) {
      values[t] = acc / n;
      valid[t] = true;
    }
  }

  if (std::none_of(valid.begin(), valid.end(), [](bool v) { return v; }))
    throw AllKeypointsBelowConfidence("no frame pair has a confident keypoint");

  // Fill gaps: interior by linear interpolation, edges by nearest copy.
  std::ptrdiff_t prev = -1;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (!valid[i]) continue;
    if (prev < 0) {
      for (std::ptrdiff_t j = 0; j < i; ++j) values[j] = values[i];
    } else if (prev + 1 < i) {
      for (std::ptrdiff_t j = prev + 1; j < i; ++j) {
        const double frac = static_cast<double>(j - prev) / (i - prev);
        values[j] = values[prev] + frac * (values[i] - values[prev]);
      }
    }
    prev = i;
  }
  for (std::ptrdiff_t j = prev + 1; j < n; ++j) values[j] = values[prev];

  return VelocitySignal{std::move(values), seq.fps};
}

VelocitySignal smooth(const VelocitySignal& v, double sigma_frames) {
  return VelocitySignal{dsp::gaussian_smooth(v.values, sigma_frames), v.fps};
}

namespace {

struct Peak {
  std::size_t index;
  double value;
};

// scipy-style prominence: lowest point on the walk toward the nearest
// strictly higher sample (or signal edge) on each side.
double prominence_of(const std::vector<double>& v, std::size_t peak) {
  double left_min = v[peak];
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(peak) - 1; i >= 0; --i) {
    if (v[i] > v[peak]) break;
    left_min = std::min(left_min, v[i]);
  }
  double right_min = v[peak];
  for (std::size_t i = peak + 1; i < v.size(); ++i) {
    if (v[i] > v[peak]) break;
    right_min = std::min(right_min, v[i]);
  }
  return v[peak] - std::max(left_min, right_min);
}

std::vector<Peak> local_maxima(const std::vector<double>& v) {
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) continue;
    std::size_t j = i;  // scan a potential plateau
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] < v[i])
      peaks.push_back({(i + j) / 2, v[i]});  // plateau center
    i = j;
  }
  return peaks;
}

}  // namespace

AccentTrack detect_accents(const VelocitySignal& v, double min_separation_s,
                           double prominence_frac) {
  const std::vector<double>& s = v.values;
  const double vmax = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());

  std::vector<Peak> peaks = local_maxima(s);
  std::erase_if(peaks, [&](const Peak& p) {
    return prominence_of(s, p.index) < prominence_frac * vmax;
  });
  if (peaks.empty()) throw NoAccents("no qualifying local maximum");

  // Suppression: tallest first, ties to the earlier peak.
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });
  std::vector<Peak> kept;
  for (const Peak& p : peaks) {
    const bool clashes = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return std::abs(static_cast<double>(p.index) -
                      static_cast<double>(q.index)) /
                 v.fps <
             min_separation_s;
    });
    if (!clashes) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.index < b.index; });

  AccentTrack track;
  track.smoothed = s;
  for (const Peak& p : kept) track.accents.push_back(p.index / v.fps);
  return track;
}

AccentTrack accents_of(const KeypointSequence& seq, const MotionConfig& cfg) {
  const VelocitySignal raw = velocity(seq, cfg.conf_threshold);
  const VelocitySignal smoothed = smooth(raw, cfg.sigma_frames);
  AccentTrack track =
      detect_accents(smoothed, cfg.min_separation_s, cfg.prominence_frac);
  track.sigma_frames = cfg.sigma_frames;
  return track;
}

}  // namespace mdalign
