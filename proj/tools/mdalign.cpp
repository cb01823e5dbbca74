// mdalign: command-line front end for the rhythmic-alignment toolkit.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdalign/agreement.hpp"
#include "mdalign/audio.hpp"
#include "mdalign/beats.hpp"
#include "mdalign/errors.hpp"
#include "mdalign/fixtures.hpp"
#include "mdalign/harness.hpp"
#include "mdalign/judge.hpp"
#include "mdalign/metrics.hpp"
#include "mdalign/motion.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mdalign;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitTotal = 3;

// minimal CSV: comma-separated, no quoting, first row is the header
std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UnreadableFile(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

int cmd_beats(const std::string& audio, const std::string& out_path) {
  const BeatGrid grid = track_beats_of(decode_wav(audio));
  json j{{"beats", grid.beats},
         {"tempo_bpm", grid.tempo_bpm},
         {"duration", grid.source_duration}};
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::binary) << text;
  }
  return kExitOk;
}

int cmd_accents(const std::string& keypoints, const MotionConfig& motion,
                const std::string& out_path) {
  const KeypointSequence seq = load_keypoints(keypoints);
  const AccentTrack track = accents_of(seq, motion);
  json j{{"accents", track.accents},
         {"num_frames", seq.num_frames()}};
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::binary) << text;
  }
  return kExitOk;
}

int cmd_score(const std::string& audio, const std::string& keypoints,
              const AlignmentParams& params, const MotionConfig& motion,
              bool lenient) {
  const BeatGrid grid = track_beats_of(decode_wav(audio));
  std::vector<double> accents;
  try {
    accents = accents_of(load_keypoints(keypoints), motion).accents;
  } catch (const NoAccents& e) {
    if (!lenient) throw;
    std::cerr << "warning: " << e.what() << "; scoring 0 under --lenient\n";
  }

  AlignmentScores s;
  try {
    s = score_clip(grid.beats, accents, params);
  } catch (const Error& e) {
    if (!lenient) throw;
    std::cerr << "warning: " << e.what() << "; scoring 0 under --lenient\n";
    s.params = params;
    s.n_beats = grid.beats.size();
    s.n_accents = accents.size();
  }
  std::cout << json{{"vbcs", s.vbcs},
                    {"abhs", s.abhs},
                    {"overall", s.overall},
                    {"sigma", s.params.sigma},
                    {"tau", s.params.tau},
                    {"n_beats", s.n_beats},
                    {"n_accents", s.n_accents}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& manifest_path, const HarnessConfig& config,
              const std::string& out_dir) {
  const std::vector<ClipManifestEntry> manifest = load_manifest(manifest_path);
  const PhysicalRunResult result = run_physical(manifest, config);
  const std::vector<LeaderboardRow> rows = build_leaderboard(result.per_model);
  write_reports(result, rows, config.params, out_dir);

  const auto failed = std::count_if(
      result.clips.begin(), result.clips.end(),
      [](const ClipResult& c) { return !c.error_kind.empty(); });
  std::cerr << "scored " << (result.clips.size() - failed) << "/"
            << result.clips.size() << " clips; reports in " << out_dir << "\n";
  if (failed == static_cast<std::ptrdiff_t>(result.clips.size()))
    return kExitTotal;
  return failed > 0 ? kExitPartial : kExitOk;
}

int cmd_plot(const std::string& audio, const std::string& keypoints,
             const AlignmentParams& params, const MotionConfig& motion,
             const std::string& out_path) {
  ClipResult clip;
  clip.entry.clip_id = fs::path(audio).stem().string();
  const BeatGrid grid = track_beats_of(decode_wav(audio));
  clip.beats = grid.beats;
  const KeypointSequence seq = load_keypoints(keypoints);
  clip.fps = seq.fps;
  const VelocitySignal vel =
      smooth(velocity(seq, motion.conf_threshold), motion.sigma_frames);
  clip.smoothed_velocity = vel.values;
  try {
    clip.accents =
        detect_accents(vel, motion.min_separation_s, motion.prominence_frac)
            .accents;
  } catch (const NoAccents&) {
    // plot without markers
  }
  const std::string svg = render_plot(clip, params);
  if (out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream(out_path, std::ios::binary) << svg;
  }
  return kExitOk;
}

int cmd_judge(const std::string& manifest_path, const std::string& dim_id,
              int repeats, const JudgeConfig& config,
              const std::string& out_path) {
  const auto dim = dimension_from_id(dim_id);
  if (!dim) {
    std::cerr << "unknown dimension: " << dim_id << "\n";
    return kExitUsage;
  }
  const std::vector<ClipManifestEntry> manifest = load_manifest(manifest_path);
  json all = json::array();
  std::size_t failed = 0;
  for (const ClipManifestEntry& e : manifest) {
    try {
      for (const JudgeRecord& r :
           judge_clip(e.clip_id, e.audio_path, *dim, e.prompt_text, repeats,
                      config)) {
        all.push_back(json{{"clip_id", r.clip_id},
                           {"model", e.model_name},
                           {"dimension", dimension_id(r.dimension)},
                           {"raw_score", r.raw_score},
                           {"normalized", r.normalized},
                           {"rationale", r.rationale},
                           {"repeat_index", r.repeat_index},
                           {"endpoint_model", r.endpoint_model}});
      }
    } catch (const Error& err) {
      ++failed;
      std::cerr << "clip " << e.clip_id << ": " << err.what() << "\n";
    }
  }
  const std::string text = all.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path, std::ios::binary) << text;
  }
  if (failed == manifest.size() && !manifest.empty()) return kExitTotal;
  return failed > 0 ? kExitPartial : kExitOk;
}

// human.csv: clip_id,dimension,rater1[,rater2,...]
// judge.csv: clip_id,dimension,score
int cmd_agree(const std::string& human_path, const std::string& judge_path) {
  const auto human_rows = read_csv(human_path);
  const auto judge_rows = read_csv(judge_path);
  if (human_rows.size() < 2 || judge_rows.size() < 2)
    throw SchemaViolation("agreement CSVs need a header plus data rows");

  // dimension -> clip -> value
  std::map<std::string, std::map<std::string, double>> human_mean;
  for (std::size_t i = 1; i < human_rows.size(); ++i) {
    const auto& row = human_rows[i];
    if (row.size() < 3) throw SchemaViolation("human.csv row too short");
    double sum = 0.0;
    for (std::size_t c = 2; c < row.size(); ++c) sum += std::stod(row[c]);
    human_mean[row[1]][row[0]] = sum / (row.size() - 2);
  }
  std::map<std::string, std::map<std::string, int>> judge_score;
  for (std::size_t i = 1; i < judge_rows.size(); ++i) {
    const auto& row = judge_rows[i];
    if (row.size() < 3) throw SchemaViolation("judge.csv row too short");
    judge_score[row[1]][row[0]] = std::stoi(row[2]);
  }

  json out = json::object();
  for (const auto& [dim, clips] : human_mean) {
    const auto jt = judge_score.find(dim);
    if (jt == judge_score.end()) continue;
    std::vector<double> x, y;
    std::vector<int> xi, yi;
    json ambiguous = json::array();
    for (const auto& [clip, mean] : clips) {
      const auto ct = jt->second.find(clip);
      if (ct == jt->second.end()) continue;
      x.push_back(mean);
      y.push_back(ct->second);
      bool amb = false;
      xi.push_back(round_to_level(mean, &amb));
      yi.push_back(ct->second);
      if (amb) ambiguous.push_back(clip);
    }
    if (x.size() < 2) continue;
    out[dim] = json{{"plcc", plcc(x, y)},
                    {"srcc", srcc(x, y)},
                    {"qwk", qwk(xi, yi)},
                    {"n", x.size()},
                    {"ambiguous_rounding", ambiguous}};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// runs.csv: dimension,score (one row per scoring run)
int cmd_stability(const std::string& runs_path) {
  const auto rows = read_csv(runs_path);
  if (rows.size() < 2)
    throw SchemaViolation("runs.csv needs a header plus data rows");
  std::map<std::string, std::vector<int>> by_dim;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() < 2) throw SchemaViolation("runs.csv row too short");
    by_dim[rows[i][0]].push_back(std::stoi(rows[i][1]));
  }
  json out = json::object();
  for (const auto& [dim, scores] : by_dim) {
    const StabilityReport r = consistency(scores);
    out[dim] = json{{"consistency", r.consistency},
                    {"n_runs", r.n_runs},
                    {"score_histogram", r.score_histogram}};
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mdalign: rhythmic-alignment evaluation toolkit"};
  app.require_subcommand(1);

  AlignmentParams params;
  MotionConfig motion;
  HarnessConfig harness;
  JudgeConfig judge_cfg;
  std::string audio, keypoints, manifest, out, human_csv, judge_csv, runs_csv;
  std::string dimension = "alignment";
  std::string dispersion = "std";
  int repeats = 1;
  bool lenient = false;
  int jobs = 1;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--sigma", params.sigma, "VBCS Gaussian tolerance, s");
    cmd->add_option("--tau", params.tau, "ABHS hit window, s");
  };
  auto add_motion = [&](CLI::App* cmd) {
    cmd->add_option("--conf-threshold", motion.conf_threshold);
    cmd->add_option("--smooth-sigma", motion.sigma_frames,
                    "velocity smoothing, frames");
    cmd->add_option("--min-separation", motion.min_separation_s);
    cmd->add_option("--prominence", motion.prominence_frac);
  };

  auto* c_beats = app.add_subcommand("beats", "extract beat timestamps");
  c_beats->add_option("audio", audio, "WAV file")->required();
  c_beats->add_option("--out", out);

  auto* c_accents = app.add_subcommand("accents", "detect motion accents");
  c_accents->add_option("keypoints", keypoints, "keypoint JSON")->required();
  c_accents->add_option("--out", out);
  add_motion(c_accents);

  auto* c_score = app.add_subcommand("score", "score one clip");
  c_score->add_option("audio", audio)->required();
  c_score->add_option("keypoints", keypoints)->required();
  c_score->add_flag("--lenient", lenient);
  add_params(c_score);
  add_motion(c_score);

  auto* c_bench = app.add_subcommand("bench", "run a manifest corpus");
  c_bench->add_option("--manifest", manifest)->required();
  c_bench->add_option("--out", out)->default_val("out");
  c_bench->add_option("--jobs", jobs);
  c_bench->add_flag("--lenient", lenient);
  c_bench->add_option("--dispersion", dispersion)
      ->check(CLI::IsMember({"std", "variance"}));
  add_params(c_bench);
  add_motion(c_bench);

  auto* c_judge = app.add_subcommand("judge", "query the judge endpoint");
  c_judge->add_option("--manifest", manifest)->required();
  c_judge->add_option("--dimension", dimension);
  c_judge->add_option("--repeats", repeats);
  c_judge->add_option("--endpoint", judge_cfg.endpoint_url)->required();
  c_judge->add_option("--model", judge_cfg.model_name);
  c_judge->add_option("--templates", judge_cfg.template_dir);
  c_judge->add_option("--cache", judge_cfg.cache_dir);
  c_judge->add_option("--timeout", judge_cfg.timeout_s);
  c_judge->add_option("--max-concurrency", judge_cfg.max_concurrency);
  c_judge->add_option("--out", out);

  auto* c_agree = app.add_subcommand("agree", "human-vs-judge agreement");
  c_agree->add_option("--human", human_csv)->required();
  c_agree->add_option("--judge", judge_csv)->required();

  auto* c_stab = app.add_subcommand("stability", "judge self-consistency");
  c_stab->add_option("--scores", runs_csv)->required();

  auto* c_plot = app.add_subcommand("plot", "render a clip timeline SVG");
  c_plot->add_option("audio", audio)->required();
  c_plot->add_option("keypoints", keypoints)->required();
  c_plot->add_option("--out", out);
  add_params(c_plot);
  add_motion(c_plot);

  auto* c_demo = app.add_subcommand("make-demo",
                                    "write the synthetic demo corpus");
  c_demo->add_option("--out", out)->default_val("demo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  harness.params = params;
  harness.motion = motion;
  harness.jobs = jobs;
  harness.lenient = lenient;
  harness.dispersion =
      dispersion == "variance" ? DispersionKind::kVariance : DispersionKind::kStd;

  try {
    if (c_beats->parsed()) return cmd_beats(audio, out);
    if (c_accents->parsed()) return cmd_accents(keypoints, motion, out);
    if (c_score->parsed())
      return cmd_score(audio, keypoints, params, motion, lenient);
    if (c_bench->parsed()) return cmd_bench(manifest, harness, out);
    if (c_judge->parsed())
      return cmd_judge(manifest, dimension, repeats, judge_cfg, out);
    if (c_agree->parsed()) return cmd_agree(human_csv, judge_csv);
    if (c_stab->parsed()) return cmd_stability(runs_csv);
    if (c_plot->parsed())
      return cmd_plot(audio, keypoints, params, motion, out);
    if (c_demo->parsed()) {
      const std::string path = write_demo_corpus(out);
      std::cerr << "wrote " << path << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTotal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTotal;
  }
  return kExitUsage;
}
