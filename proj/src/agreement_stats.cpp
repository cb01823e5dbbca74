#include "mdalign/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mdalign/errors.hpp"

namespace mdalign {

namespace {

void check_lengths(std::size_t nx, std::size_t ny) {
  if (nx != ny) throw std::invalid_argument("vector lengths differ");
  if (nx < 2) throw std::invalid_argument("need at least 2 observations");
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

}  // namespace

double plcc(const std::vector<double>& x, const std::vector<double>& y) {
  check_lengths(x.size(), y.size());
  const double mx = mean_of(x), my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateVector("zero variance input");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

double srcc(const std::vector<double>& x, const std::vector<double>& y) {
  check_lengths(x.size(), y.size());
  return plcc(average_ranks(x), average_ranks(y));
}

double qwk(const std::vector<int>& rater_a, const std::vector<int>& rater_b) {
  check_lengths(rater_a.size(), rater_b.size());
  constexpr int L = kScoreLevels;
  for (std::size_t i = 0; i < rater_a.size(); ++i)
    if (rater_a[i] < 1 || rater_a[i] > L || rater_b[i] < 1 || rater_b[i] > L)
      throw std::invalid_argument("scores must lie in 1..5");

  double observed[L][L] = {};
  double marg_a[L] = {}, marg_b[L] = {};
  const double n = static_cast<double>(rater_a.size());
  for (std::size_t i = 0; i < rater_a.size(); ++i) {
    observed[rater_a[i] - 1][rater_b[i] - 1] += 1.0 / n;
    marg_a[rater_a[i] - 1] += 1.0 / n;
    marg_b[rater_b[i] - 1] += 1.0 / n;
  }

  double num = 0.0, den = 0.0;
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      const double w =
          static_cast<double>((i - j) * (i - j)) / ((L - 1) * (L - 1));
      num += w * observed[i][j];
      den += w * marg_a[i] * marg_b[j];
    }
  }
  if (den == 0.0)
    throw DegenerateExpected("both raters constant and equal");
  return 1.0 - num / den;
}

StabilityReport consistency(const std::vector<int>& scores) {
  if (scores.empty()) throw std::invalid_argument("need at least 1 run");
  StabilityReport r;
  r.n_runs = scores.size();
  for (int s : scores) {
    if (s < 1 || s > kScoreLevels)
      throw std::invalid_argument("scores must lie in 1..5");
    ++r.score_histogram[s - 1];
  }
  double entropy = 0.0;
  for (std::size_t count : r.score_histogram) {
    if (count == 0) continue;  // 0 * log 0 := 0
    const double p = static_cast<double>(count) / r.n_runs;
    entropy -= p * std::log(p);
  }
  r.consistency = 1.0 - entropy / std::log(static_cast<double>(kScoreLevels));
  return r;
}

int round_to_level(double value, bool* ambiguous) {
  const double frac = value - std::floor(value);
  if (ambiguous != nullptr) *ambiguous = (frac == 0.5);
  const int level = static_cast<int>(std::lround(value));  // .5 rounds away from 0
  return std::clamp(level, 1, kScoreLevels);
}

}  // namespace mdalign
