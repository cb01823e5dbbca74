#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mdalign/errors.hpp"
#include "mdalign/metrics.hpp"

using namespace mdalign;

namespace {

// Independent quadratic-scan oracles for the two alignment scores.
double vbcs_oracle(const std::vector<double>& beats,
                   const std::vector<double>& accents, double sigma) {
  double sum = 0.0;
  for (double m : accents) {
    double best = 1e300;
    for (double a : beats) best = std::min(best, std::abs(m - a));
    sum += std::exp(-(best * best) / (2.0 * sigma * sigma));
  }
  return sum / accents.size();
}

double abhs_oracle(const std::vector<double>& beats,
                   const std::vector<double>& accents, double tau) {
  std::size_t hits = 0;
  for (double a : beats) {
    double best = 1e300;
    for (double m : accents) best = std::min(best, std::abs(a - m));
    if (best < tau) ++hits;
  }
  return static_cast<double>(hits) / beats.size();
}

std::vector<double> random_times(std::mt19937& rng, std::size_t n, double span) {
  std::uniform_real_distribution<double> d(0.0, span);
  std::vector<double> out(n);
  for (double& t : out) t = d(rng);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("alignment scores match quadratic-scan oracles on random inputs") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<std::size_t> count(1, 40);
  std::uniform_real_distribution<double> sig(0.02, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<double> beats = random_times(rng, count(rng), 10.0);
    const std::vector<double> accents = random_times(rng, count(rng), 10.0);
    AlignmentParams p;
    p.sigma = sig(rng);
    p.tau = sig(rng);
    CHECK(vbcs(beats, accents, p) ==
          doctest::Approx(vbcs_oracle(beats, accents, p.sigma)).epsilon(1e-12));
    CHECK(abhs(beats, accents, p) ==
          doctest::Approx(abhs_oracle(beats, accents, p.tau)).epsilon(1e-12));
  }
}

TEST_CASE("a worked two-accent example evaluates exactly") {
  // Accents at 0.55 and 1.20 against beats at 0.5 and 1.0 with sigma 0.1:
  // (exp(-0.05^2/0.02) + exp(-0.2^2/0.02)) / 2.
  const std::vector<double> beats = {0.5, 1.0};
  const std::vector<double> accents = {0.55, 1.20};
  AlignmentParams p;  // sigma = tau = 0.1
  const double expected = (std::exp(-0.125) + std::exp(-2.0)) / 2.0;
  CHECK(vbcs(beats, accents, p) == doctest::Approx(expected).epsilon(1e-15));
  // Beat 0.5 has an accent 0.05 away (hit); beat 1.0 is 0.2 away (miss).
  CHECK(abhs(beats, accents, p) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("the hit window boundary is strict") {
  const std::vector<double> beats = {1.0};
  AlignmentParams p;  // tau = 0.1
  CHECK(abhs(beats, {1.1}, p) == 0.0);       // exactly tau: not a hit
  CHECK(abhs(beats, {1.0999}, p) == 1.0);    // just inside
}

TEST_CASE("perfect alignment scores 1 on both axes") {
  const std::vector<double> beats = {0.5, 1.0, 1.5, 2.0};
  AlignmentParams p;
  CHECK(vbcs(beats, beats, p) == doctest::Approx(1.0));
  CHECK(abhs(beats, beats, p) == doctest::Approx(1.0));
  const AlignmentScores s = score_clip(beats, beats, p);
  CHECK(s.overall == doctest::Approx(1.0));
  CHECK(s.n_beats == 4);
  CHECK(s.n_accents == 4);
}

TEST_CASE("scores live in [0, 1] for arbitrary inputs") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<std::size_t> count(1, 25);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> beats = random_times(rng, count(rng), 8.0);
    const std::vector<double> accents = random_times(rng, count(rng), 8.0);
    const AlignmentScores s = score_clip(beats, accents, {});
    CHECK(s.vbcs >= 0.0);
    CHECK(s.vbcs <= 1.0);
    CHECK(s.abhs >= 0.0);
    CHECK(s.abhs <= 1.0);
    CHECK(s.overall == doctest::Approx((s.vbcs + s.abhs) / 2.0).epsilon(1e-15));
  }
}

TEST_CASE("scores are invariant to a global time shift") {
  std::mt19937 rng(13);
  std::vector<double> beats = random_times(rng, 12, 6.0);
  std::vector<double> accents = random_times(rng, 9, 6.0);
  const AlignmentScores base = score_clip(beats, accents, {});
  for (double& t : beats) t += 3.25;
  for (double& t : accents) t += 3.25;
  const AlignmentScores shifted = score_clip(beats, accents, {});
  CHECK(shifted.vbcs == doctest::Approx(base.vbcs).epsilon(1e-12));
  CHECK(shifted.abhs == doctest::Approx(base.abhs).epsilon(1e-12));
}

TEST_CASE("VBCS increases monotonically as sigma grows") {
  std::mt19937 rng(57);
  const std::vector<double> beats = random_times(rng, 10, 5.0);
  const std::vector<double> accents = random_times(rng, 10, 5.0);
  double prev = -1.0;
  for (double sigma : {0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    AlignmentParams p;
    p.sigma = sigma;
    const double v = vbcs(beats, accents, p);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("limits: huge tolerances drive both scores to 1") {
  std::mt19937 rng(58);
  const std::vector<double> beats = random_times(rng, 10, 5.0);
  const std::vector<double> accents = random_times(rng, 10, 5.0);
  AlignmentParams p;
  p.sigma = 1e6;
  p.tau = 1e6;
  CHECK(vbcs(beats, accents, p) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(abhs(beats, accents, p) == 1.0);
}

TEST_CASE("far-apart events drive both scores to 0") {
  AlignmentParams p;
  const std::vector<double> beats = {0.0, 1.0};
  const std::vector<double> accents = {100.0, 101.0};
  CHECK(vbcs(beats, accents, p) < 1e-12);
  CHECK(abhs(beats, accents, p) == 0.0);
}

TEST_CASE("VBCS averages over accents while ABHS averages over beats") {
  AlignmentParams p;
  // One beat, three accents: only one accent is close.
  const std::vector<double> beats = {1.0};
  const std::vector<double> accents = {1.0, 5.0, 9.0};
  CHECK(vbcs(beats, accents, p) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(abhs(beats, accents, p) == 1.0);  // the single beat is covered
}

TEST_CASE("empty event sets raise typed errors") {
  AlignmentParams p;
  CHECK_THROWS_AS(vbcs({}, {1.0}, p), EmptyBeats);
  CHECK_THROWS_AS(vbcs({1.0}, {}, p), EmptyAccents);
  CHECK_THROWS_AS(abhs({}, {1.0}, p), EmptyBeats);
  CHECK_THROWS_AS(abhs({1.0}, {}, p), EmptyAccents);
}

TEST_CASE("aggregate reproduces hand-computed means and dispersions") {
  std::vector<AlignmentScores> clips;
  const std::vector<double> vb = {0.2, 0.5, 0.8};
  const std::vector<double> ab = {0.1, 0.4, 0.4};
  for (std::size_t i = 0; i < vb.size(); ++i) {
    AlignmentScores s;
    s.vbcs = vb[i];
    s.abhs = ab[i];
    s.overall = (vb[i] + ab[i]) / 2.0;
    clips.push_back(s);
  }
  const CorpusAlignment agg = aggregate(clips);
  CHECK(agg.mean_vbcs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(agg.mean_abhs == doctest::Approx(0.3).epsilon(1e-15));
  // Population std: sqrt(mean of squared deviations).
  CHECK(agg.csd == doctest::Approx(std::sqrt(0.06)).epsilon(1e-12));
  CHECK(agg.hsd == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));

  const CorpusAlignment var = aggregate(clips, DispersionKind::kVariance);
  CHECK(var.csd == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(var.hsd == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("aggregate of identical clips has zero dispersion") {
  AlignmentScores s;
  s.vbcs = 0.62;
  s.abhs = 0.31;
  const CorpusAlignment agg = aggregate({s, s, s, s});
  CHECK(agg.mean_vbcs == doctest::Approx(0.62));
  CHECK(agg.mean_abhs == doctest::Approx(0.31));
  CHECK(std::abs(agg.csd) < 1e-15);
  CHECK(std::abs(agg.hsd) < 1e-15);
}

TEST_CASE("aggregating an empty corpus is an error") {
  CHECK_THROWS_AS(aggregate({}), EmptyCorpus);
}
