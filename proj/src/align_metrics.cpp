#include "mdalign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdalign/errors.hpp"

namespace mdalign {

namespace {

double min_abs_distance(double t, const std::vector<double>& events) {
  double best = std::numeric_limits<double>::infinity();
  for (double e : events) best = std::min(best, std::abs(t - e));
  return best;
}

void check_nonempty(const std::vector<double>& beats,
                    const std::vector<double>& accents) {
  if (beats.empty()) throw EmptyBeats("beat set is empty");
  if (accents.empty()) throw EmptyAccents("accent set is empty");
}

}  // namespace

double vbcs(const std::vector<double>& beats,
            const std::vector<double>& accents, const AlignmentParams& p) {
  check_nonempty(beats, accents);
  if (p.sigma <= 0.0) throw std::invalid_argument("sigma must be > 0");
  double acc = 0.0;
  for (double m : accents) {
    const double d = min_abs_distance(m, beats);
    acc += std::exp(-(d * d) / (2.0 * p.sigma * p.sigma));
  }
  return acc / static_cast<double>(accents.size());
}

double abhs(const std::vector<double>& beats,
            const std::vector<double>& accents, const AlignmentParams& p) {
  check_nonempty(beats, accents);
  if (p.tau <= 0.0) throw std::invalid_argument("tau must be > 0");
  std::size_t hits = 0;
  for (double a : beats)
    if (min_abs_distance(a, accents) < p.tau) ++hits;  // strict at the boundary
  return static_cast<double>(hits) / static_cast<double>(beats.size());
}

double overall(double vbcs_value, double abhs_value) {
  return (vbcs_value + abhs_value) / 2.0;
}

AlignmentScores score_clip(const std::vector<double>& beats,
                           const std::vector<double>& accents,
                           const AlignmentParams& p) {
  AlignmentScores s;
  s.params = p;
  s.n_beats = beats.size();
  s.n_accents = accents.size();
  s.vbcs = vbcs(beats, accents, p);
  s.abhs = abhs(beats, accents, p);
  s.overall = overall(s.vbcs, s.abhs);
  return s;
}

CorpusAlignment aggregate(const std::vector<AlignmentScores>& per_clip,
                          DispersionKind kind) {
  if (per_clip.empty()) throw EmptyCorpus("no per-clip scores");
  CorpusAlignment c;
  c.per_clip = per_clip;
  const double n = static_cast<double>(per_clip.size());
  for (const AlignmentScores& s : per_clip) {
    c.mean_vbcs += s.vbcs;
    c.mean_abhs += s.abhs;
  }
  c.mean_vbcs /= n;
  c.mean_abhs /= n;

  double var_v = 0.0, var_h = 0.0;
  for (const AlignmentScores& s : per_clip) {
    var_v += (s.vbcs - c.mean_vbcs) * (s.vbcs - c.mean_vbcs);
    var_h += (s.abhs - c.mean_abhs) * (s.abhs - c.mean_abhs);
  }
  var_v /= n;  // population variance
  var_h /= n;
  if (kind == DispersionKind::kStd) {
    c.csd = std::sqrt(var_v);
    c.hsd = std::sqrt(var_h);
  } else {
    c.csd = var_v;
    c.hsd = var_h;
  }
  return c;
}

}  // namespace mdalign
