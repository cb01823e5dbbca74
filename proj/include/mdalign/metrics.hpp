#ifndef MDALIGN_METRICS_HPP_
#define MDALIGN_METRICS_HPP_

#include <vector>

namespace mdalign {

struct AlignmentParams {
  double sigma = 0.1;  // Gaussian tolerance, seconds
  double tau = 0.1;    // hit window, seconds
};

enum class DispersionKind { kStd, kVariance };

struct AlignmentScores {
  double vbcs = 0.0;
  double abhs = 0.0;
  double overall = 0.0;  // (vbcs + abhs) / 2, exactly
  std::size_t n_beats = 0;
  std::size_t n_accents = 0;
  AlignmentParams params;
};

struct CorpusAlignment {
  std::vector<AlignmentScores> per_clip;
  double mean_vbcs = 0.0;
  double mean_abhs = 0.0;
  double csd = 0.0;  // dispersion of per-clip vbcs
  double hsd = 0.0;  // dispersion of per-clip abhs
};

// Mean Gaussian proximity of each motion accent to its nearest beat:
// (1/|M|) sum exp(-min_a |m - a|^2 / (2 sigma^2)).
double vbcs(const std::vector<double>& beats,
            const std::vector<double>& accents, const AlignmentParams& p);

// Fraction of beats with an accent strictly inside the tau window:
// (1/|A|) sum I(min_m |a - m| < tau).
double abhs(const std::vector<double>& beats,
            const std::vector<double>& accents, const AlignmentParams& p);

double overall(double vbcs_value, double abhs_value);

AlignmentScores score_clip(const std::vector<double>& beats,
                           const std::vector<double>& accents,
                           const AlignmentParams& p);

// Corpus means plus CSD/HSD dispersion (population std by default).
CorpusAlignment aggregate(const std::vector<AlignmentScores>& per_clip,
                          DispersionKind kind = DispersionKind::kStd);

}  // namespace mdalign

#endif  // MDALIGN_METRICS_HPP_
