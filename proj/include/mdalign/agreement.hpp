#ifndef MDALIGN_AGREEMENT_HPP_
#define MDALIGN_AGREEMENT_HPP_

#include <array>
#include <cstddef>
#include <vector>

namespace mdalign {

constexpr int kScoreLevels = 5;  // judge scores live on {1..5}

struct StabilityReport {
  double consistency = 0.0;  // C in [0, 1]
  std::size_t n_runs = 0;
  std::array<std::size_t, kScoreLevels> score_histogram{};  // levels 1..5
};

// Sample Pearson correlation; throws DegenerateVector on zero variance.
double plcc(const std::vector<double>& x, const std::vector<double>& y);

// Spearman: Pearson correlation of average ranks (ties share the mean rank).
double srcc(const std::vector<double>& x, const std::vector<double>& y);

// Quadratic weighted kappa on 1..5 scores; expected matrix from the outer
// product of the sample marginals.
double qwk(const std::vector<int>& rater_a, const std::vector<int>& rater_b);

// Normalized-entropy consistency C = 1 - H(p)/log 5 over repeated runs.
StabilityReport consistency(const std::vector<int>& scores);

// Average ranks with tie handling; exposed for the rank-based tests.
std::vector<double> average_ranks(const std::vector<double>& v);

// Round a continuous mean-human score to the nearest level in 1..5;
// `ambiguous` is set when the value sits exactly on a .5 boundary.
int round_to_level(double value, bool* ambiguous);

}  // namespace mdalign

#endif  // MDALIGN_AGREEMENT_HPP_
