#include "mdalign/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "mdalign/audio.hpp"

namespace mdalign {

namespace fs = std::filesystem;
using nlohmann::json;

ClickTrack make_click_track(double bpm, double duration_s, double sample_rate,
                            double noise_db, unsigned seed,
                            double first_click_s) {
  ClickTrack track;
  track.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  track.samples.assign(n, 0.0);

  const double period = 60.0 / bpm;
  const auto burst_len = static_cast<std::size_t>(std::llround(0.004 * sample_rate));
  for (double t = first_click_s; t < duration_s - 0.01; t += period) {
    track.click_times.push_back(t);
    const auto start = static_cast<std::size_t>(std::llround(t * sample_rate));
    for (std::size_t i = 0; i < burst_len && start + i < n; ++i) {
      const double dt = i / sample_rate;
      track.samples[start + i] +=
          0.9 * std::sin(2.0 * M_PI * 2000.0 * dt) * std::exp(-dt / 0.001);
    }
  }

  const double noise_amp = 0.9 * std::pow(10.0, noise_db / 20.0);
  if (noise_amp > 1e-9) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-noise_amp, noise_amp);
    for (double& s : track.samples) s += dist(rng);
  }
  return track;
}

KeypointSequence make_pulsing_keypoints(const std::vector<double>& event_times,
                                        double duration_s, double fps,
                                        std::size_t num_keypoints,
                                        double phase_shift_s,
                                        double pulse_width_s,
                                        double amplitude_px) {
  KeypointSequence seq;
  seq.fps = fps;
  seq.width = 480;
  seq.height = 480;
  seq.layout = "coco17";

  const auto t_count = static_cast<std::size_t>(std::llround(duration_s * fps));
  // per-frame displacement magnitude: Gaussian pulse at each event time
  std::vector<double> disp(t_count > 0 ? t_count - 1 : 0, 0.0);
  for (std::size_t i = 0; i < disp.size(); ++i) {
    const double t = i / fps;
    for (double e : event_times) {
      const double d = t - (e + phase_shift_s);
      disp[i] += amplitude_px *
                 std::exp(-(d * d) / (2.0 * pulse_width_s * pulse_width_s));
    }
  }

  // integrate, flipping direction at every event so positions stay bounded
  double x = 240.0;
  int direction = 1;
  std::size_t next_event = 0;
  seq.frames.reserve(t_count);
  auto make_frame = [&](double cx) {
    std::vector<Keypoint> frame(num_keypoints);
    for (std::size_t k = 0; k < num_keypoints; ++k)
      frame[k] = Keypoint{cx + 4.0 * static_cast<double>(k),
                          100.0 + 10.0 * static_cast<double>(k), 1.0};
    return frame;
  };
  seq.frames.push_back(make_frame(x));
  for (std::size_t i = 0; i < disp.size(); ++i) {
    const double t = i / fps;
    while (next_event < event_times.size() &&
           event_times[next_event] + phase_shift_s < t) {
      direction = -direction;
      ++next_event;
    }
    x += direction * disp[i];
    seq.frames.push_back(make_frame(x));
  }
  return seq;
}

void write_keypoints_json(const std::string& path,
                          const KeypointSequence& seq) {
  json j;
  j["fps"] = seq.fps;
  j["width"] = seq.width;
  j["height"] = seq.height;
  j["layout"] = seq.layout;
  json frames = json::array();
  for (const auto& frame : seq.frames) {
    json f = json::array();
    for (const Keypoint& kp : frame)
      f.push_back(json::array({kp.x, kp.y, kp.confidence}));
    frames.push_back(std::move(f));
  }
  j["frames"] = std::move(frames);
  std::ofstream out(path, std::ios::binary);
  out << j.dump() << "\n";
}

std::string write_demo_corpus(const std::string& dir) {
  fs::create_directories(fs::path(dir) / "clips");
  json manifest = json::array();

  struct ClipDef {
    const char* clip_id;
    const char* model;
    double bpm;
    double phase_shift;
  };
  const ClipDef defs[] = {
      {"onbeat_090", "on_beat_gen", 90.0, 0.0},
      {"onbeat_120", "on_beat_gen", 120.0, 0.0},
      {"onbeat_150", "on_beat_gen", 150.0, 0.0},
      {"offbeat_090", "off_beat_gen", 90.0, 60.0 / 90.0 / 2.0},
      {"offbeat_120", "off_beat_gen", 120.0, 60.0 / 120.0 / 2.0},
      {"offbeat_150", "off_beat_gen", 150.0, 60.0 / 150.0 / 2.0},
  };

  const double duration = 8.0;
  for (const ClipDef& s : defs) {
    const ClickTrack track =
        make_click_track(s.bpm, duration, 16000.0, -40.0, 7);
    const std::string wav = (fs::path(dir) / "clips" / (std::string(s.clip_id) + ".wav")).string();
    write_wav(wav, track.samples, track.sample_rate);

    const KeypointSequence seq = make_pulsing_keypoints(
        track.click_times, duration, 24.0, 17, s.phase_shift);
    const std::string kp = (fs::path(dir) / "clips" / (std::string(s.clip_id) + ".json")).string();
    write_keypoints_json(kp, seq);

    manifest.push_back(
        json{{"clip_id", s.clip_id},
             {"model_name", s.model},
             {"prompt_text", "a dancer moving to a " +
                                 std::to_string(static_cast<int>(s.bpm)) +
                                 " BPM click track"},
             {"audio_path", "clips/" + std::string(s.clip_id) + ".wav"},
             {"keypoints_path", "clips/" + std::string(s.clip_id) + ".json"}});
  }

  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  std::ofstream out(manifest_path, std::ios::binary);
  out << manifest.dump(2) << "\n";
  return manifest_path;
}

}  // namespace mdalign
