#include "mdalign/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mdalign/audio.hpp"
#include "mdalign/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mdalign {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<ClipManifestEntry> load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ManifestInvalid("cannot read " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ManifestInvalid(path + ": " + e.what());
  }
  if (!j.is_array()) throw ManifestInvalid(path + ": top level must be an array");

  std::vector<ClipManifestEntry> entries;
  std::set<std::string> seen_ids;
  const fs::path base = fs::path(path).parent_path();
  for (const auto& item : j) {
    ClipManifestEntry e;
    for (const char* key : {"clip_id", "model_name", "audio_path",
                            "keypoints_path"})
      if (!item.contains(key) || !item[key].is_string())
        throw ManifestInvalid(path + ": entry missing string field '" +
                              std::string(key) + "'");
    e.clip_id = item["clip_id"].get<std::string>();
    e.model_name = item["model_name"].get<std::string>();
    e.prompt_text = item.value("prompt_text", std::string{});
    e.judge_cache = item.value("judge_cache", std::string{});
    // relative media paths resolve against the manifest location
    auto resolve = [&](const std::string& p) {
      return fs::path(p).is_absolute() ? p : (base / p).string();
    };
    e.audio_path = resolve(item["audio_path"].get<std::string>());
    e.keypoints_path = resolve(item["keypoints_path"].get<std::string>());
    if (!seen_ids.insert(e.clip_id).second)
      throw ManifestInvalid(path + ": duplicate clip_id '" + e.clip_id + "'");
    entries.push_back(std::move(e));
  }
  return entries;
}

namespace {

ClipResult run_clip(const ClipManifestEntry& entry,
                    const HarnessConfig& config) {
  ClipResult r;
  r.entry = entry;
  try {
    const AudioBuffer raw = decode_wav(entry.audio_path);
    const BeatGrid grid = track_beats_of(raw, config.beat);
    r.beats = grid.beats;

    const KeypointSequence seq = load_keypoints(entry.keypoints_path);
    r.fps = seq.fps;
    const VelocitySignal vel =
        smooth(velocity(seq, config.motion.conf_threshold),
               config.motion.sigma_frames);
    r.smoothed_velocity = vel.values;
    try {
      const AccentTrack track =
          detect_accents(vel, config.motion.min_separation_s,
                         config.motion.prominence_frac);
      r.accents = track.accents;
    } catch (const NoAccents&) {
      if (!config.lenient) throw;
    }

    try {
      r.scores = score_clip(r.beats, r.accents, config.params);
    } catch (const Error& e) {
      if (!config.lenient) throw;
      // degenerate event sets score 0 under --lenient
      AlignmentScores zero;
      zero.params = config.params;
      zero.n_beats = r.beats.size();
      zero.n_accents = r.accents.size();
      r.scores = zero;
      r.error_message = "lenient: " + std::string(e.what());
    }
  } catch (const Error& e) {
    r.error_kind = e.kind();
    r.error_message = e.what();
  } catch (const std::exception& e) {
    r.error_kind = "InternalError";
    r.error_message = e.what();
  }
  return r;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

PhysicalRunResult run_physical(const std::vector<ClipManifestEntry>& manifest,
                               const HarnessConfig& config) {
  PhysicalRunResult result;
  result.clips.resize(manifest.size());

  const auto n = static_cast<std::ptrdiff_t>(manifest.size());
  const int jobs = std::max(1, config.jobs);
#ifdef _OPENMP
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i)
    result.clips[i] = run_clip(manifest[i], config);
  (void)jobs;

  std::map<std::string, std::vector<AlignmentScores>> by_model;
  for (const ClipResult& clip : result.clips)
    if (clip.scores.has_value())
      by_model[clip.entry.model_name].push_back(*clip.scores);
  for (const auto& [model, scores] : by_model)
    result.per_model.emplace(model, aggregate(scores, config.dispersion));
  return result;
}

std::vector<LeaderboardRow> build_leaderboard(
    const std::map<std::string, CorpusAlignment>& physical,
    const std::map<std::string, double>& judge_align) {
  std::vector<LeaderboardRow> rows;
  for (const auto& [model, corpus] : physical) {
    LeaderboardRow row;
    row.model_name = model;
    row.mean_vbcs = corpus.mean_vbcs;
    row.csd = corpus.csd;
    row.mean_abhs = corpus.mean_abhs;
    row.hsd = corpus.hsd;
    row.low_level_avg = (corpus.mean_vbcs + corpus.mean_abhs) / 2.0;
    const auto it = judge_align.find(model);
    if (it != judge_align.end()) {
      row.align = it->second;
      row.combined = (row.low_level_avg + it->second) / 2.0;
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const LeaderboardRow& a, const LeaderboardRow& b) {
              const double ka = a.combined.value_or(a.low_level_avg);
              const double kb = b.combined.value_or(b.low_level_avg);
              if (ka != kb) return ka > kb;
              return a.model_name < b.model_name;
            });
  return rows;
}

std::string leaderboard_csv(const std::vector<LeaderboardRow>& rows) {
  const bool has_judge =
      std::any_of(rows.begin(), rows.end(),
                  [](const LeaderboardRow& r) { return r.align.has_value(); });
  std::ostringstream out;
  out << "model,vbcs,csd,abhs,hsd,low_level_avg";
  if (has_judge) out << ",align,avg";
  out << "\n";
  for (const LeaderboardRow& r : rows) {
    out << r.model_name << ',' << fmt(r.mean_vbcs) << ',' << fmt(r.csd) << ','
        << fmt(r.mean_abhs) << ',' << fmt(r.hsd) << ','
        << fmt(r.low_level_avg);
    if (has_judge) {
      out << ',' << (r.align ? fmt(*r.align) : std::string{}) << ','
          << (r.combined ? fmt(*r.combined) : std::string{});
    }
    out << "\n";
  }
  return out.str();
}

std::string leaderboard_json(const std::vector<LeaderboardRow>& rows) {
  json arr = json::array();
  for (const LeaderboardRow& r : rows) {
    json row{{"model", r.model_name},    {"vbcs", r.mean_vbcs},
             {"csd", r.csd},             {"abhs", r.mean_abhs},
             {"hsd", r.hsd},             {"low_level_avg", r.low_level_avg}};
    if (r.align) row["align"] = *r.align;
    if (r.combined) row["avg"] = *r.combined;
    arr.push_back(std::move(row));
  }
  return arr.dump(2) + "\n";
}

std::string per_clip_json(const PhysicalRunResult& result) {
  json arr = json::array();
  for (const ClipResult& clip : result.clips) {
    if (!clip.scores.has_value()) continue;
    const AlignmentScores& s = *clip.scores;
    arr.push_back(json{{"clip_id", clip.entry.clip_id},
                       {"model", clip.entry.model_name},
                       {"vbcs", s.vbcs},
                       {"abhs", s.abhs},
                       {"overall", s.overall},
                       {"sigma", s.params.sigma},
                       {"tau", s.params.tau},
                       {"n_beats", s.n_beats},
                       {"n_accents", s.n_accents}});
  }
  return arr.dump(2) + "\n";
}

std::string errors_json(const PhysicalRunResult& result) {
  json arr = json::array();
  for (const ClipResult& clip : result.clips) {
    if (clip.error_kind.empty()) continue;
    arr.push_back(json{{"clip_id", clip.entry.clip_id},
                       {"model", clip.entry.model_name},
                       {"error", clip.error_kind},
                       {"message", clip.error_message}});
  }
  return arr.dump(2) + "\n";
}

void write_reports(const PhysicalRunResult& result,
                   const std::vector<LeaderboardRow>& rows,
                   const AlignmentParams& params, const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir) / "plots");
  auto write = [&](const fs::path& rel, const std::string& content) {
    std::ofstream f(fs::path(out_dir) / rel, std::ios::binary);
    f << content;
  };
  write("per_clip.json", per_clip_json(result));
  write("leaderboard.csv", leaderboard_csv(rows));
  write("leaderboard.json", leaderboard_json(rows));
  write("errors.json", errors_json(result));
  for (const ClipResult& clip : result.clips) {
    if (clip.smoothed_velocity.empty() || clip.beats.empty()) continue;
    write(fs::path("plots") / (clip.entry.clip_id + ".svg"),
          render_plot(clip, params));
  }
}

}  // namespace mdalign
