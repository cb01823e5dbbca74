#ifndef MDALIGN_HARNESS_HPP_
#define MDALIGN_HARNESS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdalign/beats.hpp"
#include "mdalign/metrics.hpp"
#include "mdalign/motion.hpp"

namespace mdalign {

struct ClipManifestEntry {
  std::string clip_id;
  std::string model_name;
  std::string prompt_text;
  std::string audio_path;
  std::string keypoints_path;
  std::string judge_cache;  // optional
};

std::vector<ClipManifestEntry> load_manifest(const std::string& path);

struct HarnessConfig {
  AlignmentParams params;
  MotionConfig motion;
  BeatTrackerConfig beat;
  DispersionKind dispersion = DispersionKind::kStd;
  int jobs = 1;
  bool lenient = false;  // degenerate clips score 0 instead of failing
};

struct ClipResult {
  ClipManifestEntry entry;
  std::optional<AlignmentScores> scores;
  std::string error_kind;  // empty on success
  std::string error_message;
  // retained for plotting
  std::vector<double> beats;
  std::vector<double> accents;
  std::vector<double> smoothed_velocity;
  double fps = 0.0;
};

struct PhysicalRunResult {
  std::vector<ClipResult> clips;  // manifest order
  std::map<std::string, CorpusAlignment> per_model;
};

// Per-clip pipeline (decode -> beats; keypoints -> accents; score) over
// the whole manifest, clip failures isolated. Deterministic for any job
// count.
PhysicalRunResult run_physical(const std::vector<ClipManifestEntry>& manifest,
                               const HarnessConfig& config);

struct LeaderboardRow {
  std::string model_name;
  double mean_vbcs = 0.0;
  double csd = 0.0;
  double mean_abhs = 0.0;
  double hsd = 0.0;
  double low_level_avg = 0.0;  // (mean_vbcs + mean_abhs) / 2
  std::optional<double> align;     // judge track, [0,1]
  std::optional<double> combined;  // mean(low_level_avg, align)
};

// Rows sorted by combined average (low-level average when no judge
// scores), ties broken by model name.
std::vector<LeaderboardRow> build_leaderboard(
    const std::map<std::string, CorpusAlignment>& physical,
    const std::map<std::string, double>& judge_align = {});

std::string leaderboard_csv(const std::vector<LeaderboardRow>& rows);
std::string leaderboard_json(const std::vector<LeaderboardRow>& rows);
std::string per_clip_json(const PhysicalRunResult& result);
std::string errors_json(const PhysicalRunResult& result);

// Self-contained SVG: smoothed velocity curve, beat lines, accent
// markers, and a +-tau band around each beat. Byte-stable.
std::string render_plot(const ClipResult& clip, const AlignmentParams& params);

// Writes per_clip.json, leaderboard.csv/json, errors.json and
// plots/<clip_id>.svg under out_dir.
void write_reports(const PhysicalRunResult& result,
                   const std::vector<LeaderboardRow>& rows,
                   const AlignmentParams& params, const std::string& out_dir);

}  // namespace mdalign

#endif  // MDALIGN_HARNESS_HPP_
