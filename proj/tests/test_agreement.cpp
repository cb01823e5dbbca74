#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mdalign/agreement.hpp"
#include "mdalign/errors.hpp"

using namespace mdalign;

namespace {

// Textbook two-pass Pearson, written independently of the library.
double pearson_oracle(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// O(n^2) rank assignment: rank = 1 + count(smaller) + (count(equal)-1)/2.
std::vector<double> ranks_oracle(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t smaller = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) ++smaller;
      if (w == v[i]) ++equal;
    }
    out[i] = 1.0 + smaller + (equal - 1) / 2.0;
  }
  return out;
}

// Direct count-matrix QWK, built from integer tallies.
double qwk_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  const double n = static_cast<double>(a.size());
  double obs[5][5] = {}, pa[5] = {}, pb[5] = {};
  for (std::size_t i = 0; i < a.size(); ++i) {
    obs[a[i] - 1][b[i] - 1] += 1.0;
    pa[a[i] - 1] += 1.0;
    pb[b[i] - 1] += 1.0;
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double w = (i - j) * (i - j) / 16.0;
      num += w * obs[i][j] / n;
      den += w * (pa[i] / n) * (pb[j] / n);
    }
  return 1.0 - num / den;
}

}  // namespace

TEST_CASE("PLCC matches the textbook oracle on random data") {
  std::mt19937 rng(21);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(30), y(30);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = g(rng);
      y[i] = 0.6 * x[i] + 0.8 * g(rng);
    }
    CHECK(plcc(x, y) == doctest::Approx(pearson_oracle(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("PLCC hits the exact endpoints") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> up = {2, 4, 6, 8, 10};
  const std::vector<double> down = {10, 8, 6, 4, 2};
  CHECK(plcc(x, up) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(plcc(x, down) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("PLCC is invariant under positive affine maps") {
  std::mt19937 rng(22);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = g(rng);
  }
  const double base = plcc(x, y);
  std::vector<double> x2 = x, y2 = y;
  for (double& v : x2) v = 3.0 * v + 7.0;
  for (double& v : y2) v = 0.25 * v - 2.0;
  CHECK(plcc(x2, y2) == doctest::Approx(base).epsilon(1e-10));
  for (double& v : x2) v = -v;  // one negation flips the sign
  CHECK(plcc(x2, y2) == doctest::Approx(-base).epsilon(1e-10));
}

TEST_CASE("constant vectors are rejected as degenerate") {
  const std::vector<double> c = {3, 3, 3, 3};
  const std::vector<double> x = {1, 2, 3, 4};
  CHECK_THROWS_AS(plcc(c, x), DegenerateVector);
  CHECK_THROWS_AS(plcc(x, c), DegenerateVector);
  CHECK_THROWS_AS(srcc(c, x), DegenerateVector);
}

TEST_CASE("average ranks match the counting oracle, ties included") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> d(1, 6);  // forces ties
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(25);
    for (double& x : v) x = d(rng);
    const std::vector<double> got = average_ranks(v);
    const std::vector<double> want = ranks_oracle(v);
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("SRCC is invariant under strictly monotone transforms") {
  std::mt19937 rng(24);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(30), y(30);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = g(rng);
    y[i] = x[i] + 0.5 * g(rng);
  }
  const double base = srcc(x, y);
  std::vector<double> x2 = x;
  for (double& v : x2) v = std::exp(v);  // monotone, wildly nonlinear
  CHECK(srcc(x2, y) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("SRCC equals the classic no-tie formula on permutations") {
  std::mt19937 rng(25);
  std::vector<double> x(20), y(20);
  for (std::size_t i = 0; i < 20; ++i) x[i] = static_cast<double>(i);
  y = x;
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(y.begin(), y.end(), rng);
    double d2 = 0.0;
    for (std::size_t i = 0; i < 20; ++i) {
      const double d = average_ranks(x)[i] - average_ranks(y)[i];
      d2 += d * d;
    }
    const double n = 20.0;
    const double classic = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
    CHECK(srcc(x, y) == doctest::Approx(classic).epsilon(1e-12));
  }
}

TEST_CASE("QWK matches the count-matrix oracle on random score pairs") {
  std::mt19937 rng(26);
  std::uniform_int_distribution<int> d(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> a(40), b(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = d(rng);
      b[i] = std::clamp(a[i] + d(rng) % 3 - 1, 1, 5);
    }
    CHECK(qwk(a, b) == doctest::Approx(qwk_oracle(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("QWK is 1 for perfect agreement and near 0 for independence") {
  std::mt19937 rng(27);
  std::uniform_int_distribution<int> d(1, 5);
  std::vector<int> a(50);
  for (int& v : a) v = d(rng);
  CHECK(qwk(a, a) == doctest::Approx(1.0).epsilon(1e-12));

  // Null distribution: independent uniform raters, n = 1e5.
  std::vector<int> big_a(100000), big_b(100000);
  for (std::size_t i = 0; i < big_a.size(); ++i) {
    big_a[i] = d(rng);
    big_b[i] = d(rng);
  }
  CHECK(std::abs(qwk(big_a, big_b)) < 0.02);
}

TEST_CASE("QWK penalizes distant disagreements more than near ones") {
  std::vector<int> truth(20), off1(20), off4(20);
  for (std::size_t i = 0; i < 20; ++i) {
    truth[i] = 1 + static_cast<int>(i % 5);
    off1[i] = std::min(5, truth[i] + ((i % 2) ? 1 : 0));
    off4[i] = (truth[i] <= 2) ? 5 : 1;
  }
  CHECK(qwk(truth, off1) > qwk(truth, off4));
}

TEST_CASE("QWK with both raters constant and equal is degenerate") {
  const std::vector<int> c = {3, 3, 3, 3};
  CHECK_THROWS_AS(qwk(c, c), DegenerateExpected);
}

TEST_CASE("consistency is 1 for identical runs and 0 for a uniform spread") {
  const StabilityReport same = consistency(std::vector<int>(50, 4));
  CHECK(same.consistency == 1.0);
  CHECK(same.n_runs == 50);
  CHECK(same.score_histogram[3] == 50);

  std::vector<int> uniform;
  for (int rep = 0; rep < 10; ++rep)
    for (int s = 1; s <= 5; ++s) uniform.push_back(s);
  const StabilityReport spread = consistency(uniform);
  CHECK(std::abs(spread.consistency) < 1e-12);
}

TEST_CASE("consistency matches a direct entropy computation") {
  // 6x score 5, 3x score 4, 1x score 2.
  std::vector<int> runs = {5, 5, 5, 5, 5, 5, 4, 4, 4, 2};
  const double h = -(0.6 * std::log(0.6) + 0.3 * std::log(0.3) +
                     0.1 * std::log(0.1));
  const StabilityReport r = consistency(runs);
  CHECK(r.consistency == doctest::Approx(1.0 - h / std::log(5.0)).epsilon(1e-12));
  CHECK(r.score_histogram[4] == 6);
  CHECK(r.score_histogram[3] == 3);
  CHECK(r.score_histogram[1] == 1);
  CHECK(r.score_histogram[0] == 0);
}

TEST_CASE("consistency is permutation invariant and bounded") {
  std::mt19937 rng(28);
  std::uniform_int_distribution<int> d(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> runs(17);
    for (int& v : runs) v = d(rng);
    const double base = consistency(runs).consistency;
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);
    std::shuffle(runs.begin(), runs.end(), rng);
    CHECK(consistency(runs).consistency == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("round_to_level clamps and flags half-way values") {
  bool amb = false;
  CHECK(round_to_level(3.2, &amb) == 3);
  CHECK(!amb);
  CHECK(round_to_level(3.8, &amb) == 4);
  CHECK(!amb);
  CHECK(round_to_level(3.5, &amb) == 4);  // rounds away from zero
  CHECK(amb);
  CHECK(round_to_level(0.2, &amb) == 1);
  CHECK(round_to_level(6.7, &amb) == 5);
  CHECK(round_to_level(2.0, nullptr) == 2);
}

TEST_CASE("mismatched or tiny inputs are rejected") {
  CHECK_THROWS_AS(plcc({1, 2}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(plcc({1}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(qwk({1, 2}, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(consistency({}), std::invalid_argument);
  CHECK_THROWS_AS(consistency({6}), std::invalid_argument);
}
