#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "stl2vec/assignment.hpp"
#include "stl2vec/stats.hpp"

using namespace stl2vec;

namespace {

// Textbook single-pass moment formula, as an independent cross-check.
double pearson_reference(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (sxy - sx * sy / n) /
         std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
}

}  // namespace

TEST_CASE("pearson basics") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(pearson({1, 2, 3, 4}, {1, -1, -1, 1})) < 1e-12);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), std::domain_error);
}

TEST_CASE("pearson matches the moment formula on random data") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(100), y(100);
    for (int i = 0; i < 100; ++i) {
      x[i] = g(rng);
      y[i] = 0.3 * x[i] + g(rng);
    }
    CHECK(pearson(x, y) == doctest::Approx(pearson_reference(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("cosine similarity") {
  CHECK(cosine({1, 0}, {0, 1}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cosine({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine({1, 0}, {-2, 0}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cosine({3, 4}, {4, 3}) == doctest::Approx(24.0 / 25.0).epsilon(1e-12));
  CHECK_THROWS_AS(cosine({0, 0}, {1, 1}), std::domain_error);
}

TEST_CASE("quantile interpolates order statistics") {
  CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(quantile({4, 1, 3, 2}, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(quantile({1, 2, 3, 4, 5}, 0.5) == 3.0);
  CHECK(quantile({1, 2, 3, 4}, 0.0) == 1.0);
  CHECK(quantile({1, 2, 3, 4}, 1.0) == 4.0);
  CHECK(quantile({1, 2, 3, 4}, 0.25) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(quantile({7}, 0.99) == 7.0);
  auto qs = quantiles({1, 2, 3, 4}, {0.0, 0.5, 1.0});
  CHECK(qs == std::vector<double>{1.0, 2.5, 4.0});
}

TEST_CASE("KS statistic on known configurations") {
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0).epsilon(1e-15));
  // fully separated samples: D = 1
  CHECK(ks_statistic({1, 2}, {5, 6}) == doctest::Approx(1.0).epsilon(1e-15));
  // {1,3} vs {2,4}: ECDF gap peaks at 1/2
  CHECK(ks_statistic({1, 3}, {2, 4}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("KS p-value behaves like a test") {
  CHECK(ks_pvalue(0.0, 100, 100) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ks_pvalue(1.0, 100, 100) < 1e-6);
  // monotone decreasing in D
  CHECK(ks_pvalue(0.05, 500, 500) > ks_pvalue(0.10, 500, 500));
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(800), b(800), c(800);
  for (int i = 0; i < 800; ++i) {
    a[i] = g(rng);
    b[i] = g(rng);
    c[i] = g(rng) + 1.0;  // shifted distribution
  }
  double d_same = ks_statistic(a, b);
  double d_diff = ks_statistic(a, c);
  CHECK(ks_pvalue(d_same, 800, 800) > 0.05);
  CHECK(ks_pvalue(d_diff, 800, 800) < 1e-6);
}

TEST_CASE("assignment maximizes the total score") {
  // diagonal dominant: identity assignment
  std::vector<std::vector<double>> s = {{9, 1, 1}, {1, 9, 1}, {1, 1, 9}};
  CHECK(assign_max(s) == std::vector<std::size_t>{0, 1, 2});
  // anti-diagonal
  s = {{1, 1, 9}, {1, 9, 1}, {9, 1, 1}};
  CHECK(assign_max(s) == std::vector<std::size_t>{2, 1, 0});
  // greedy trap: row 0 prefers col 0, but the optimum routes it to col 1
  s = {{10, 9}, {9, 1}};
  CHECK(assign_max(s) == std::vector<std::size_t>{1, 0});
}

TEST_CASE("hungarian search agrees with exhaustive search") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 5 + rep % 4;
    std::vector<std::vector<double>> s(n, std::vector<double>(n));
    for (auto& row : s) {
      for (auto& v : row) v = u(rng);
    }
    auto perm = assign_max(s);  // exhaustive at this size
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best += s[i][perm[i]];

    // replicate into a larger matrix so the Hungarian path runs, with the
    // added rows/columns forced to match each other
    std::size_t big = n + 6;
    std::vector<std::vector<double>> sb(big, std::vector<double>(big, -100.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sb[i][j] = s[i][j];
    }
    for (std::size_t k = n; k < big; ++k) sb[k][k] = 0.0;
    auto bperm = assign_max(sb);
    double btotal = 0.0;
    for (std::size_t i = 0; i < big; ++i) btotal += sb[i][bperm[i]];
    CHECK(btotal == doctest::Approx(best).epsilon(1e-9));
    // sanity: result is a permutation
    std::vector<bool> seen(big, false);
    for (auto j : bperm) {
      CHECK(!seen[j]);
      seen[j] = true;
    }
  }
}
