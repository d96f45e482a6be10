// Copyright 2026 The miabench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <random>

#include "doctest.h"
#include "miabench/errors.h"
#include "miabench/stats.h"
#include "oracles.h"

using namespace miabench;

namespace {

std::vector<double> Draw(std::mt19937_64& rng, std::size_t n, bool ties, double shift = 0.0) {
  std::normal_distribution<double> g(shift, 1.0);
  std::uniform_int_distribution<int> k(0, 6);
  std::vector<double> v(n);
  for (double& x : v) x = ties ? static_cast<double>(k(rng)) + shift : g(rng);
  return v;
}

std::vector<Vec> Draw2d(std::mt19937_64& rng, std::size_t n, bool ties, double shift = 0.0) {
  std::vector<Vec> v(n);
  const auto xs = Draw(rng, n, ties, shift);
  const auto ys = Draw(rng, n, ties);
  for (std::size_t i = 0; i < n; ++i) v[i] = {xs[i], ys[i]};
  return v;
}

}  // namespace

TEST_CASE("Kolmogorov survival function reference values") {
  CHECK(KolmogorovSurvival(0.0) == 1.0);
  CHECK(KolmogorovSurvival(0.5) == doctest::Approx(0.963945).epsilon(1e-5));
  CHECK(KolmogorovSurvival(1.0) == doctest::Approx(0.2699996).epsilon(1e-5));
  CHECK(KolmogorovSurvival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(KolmogorovSurvival(3.0) < 1e-6);
  double prev = 1.0;
  for (double l = 0.01; l < 4.0; l += 0.01) {
    const double q = KolmogorovSurvival(l);
    CHECK(q <= prev + 1e-15);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("univariate D equals the brute-force ECDF distance") {
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 100; ++rep) {
    const bool ties = rep % 2 == 1;
    const auto a = Draw(rng, 5 + rep % 40, ties);
    const auto b = Draw(rng, 3 + rep % 23, ties, 0.3);
    CHECK(KsStatistic(a, b) == doctest::Approx(oracle::KsBruteForce(a, b)).epsilon(1e-14));
  }
}

TEST_CASE("identical samples give D zero and p one") {
  const std::vector<double> a{0.3, 0.1, 0.7, 0.7};
  const KsResult r = KsUnivariate(a, a);
  CHECK(r.statistic == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK(KsUnivariatePermutation(a, a, 50, 1).p_value == 1.0);
  const std::vector<Vec> p{{0, 0}, {1, 2}, {3, 1}};
  CHECK(KsBivariate(p, p).statistic == 0.0);
  CHECK(KsBivariate(p, p).p_value == 1.0);
}

TEST_CASE("disjoint samples give D one") {
  const std::vector<double> a{1, 2, 3}, b{10, 11};
  CHECK(KsStatistic(a, b) == 1.0);
  CHECK(KsUnivariate(a, b).n1 == 3);
  CHECK_THROWS_AS(KsStatistic(a, std::vector<double>{}), DomainError);
}

TEST_CASE("asymptotic and permutation p-values agree at n = 200") {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = Draw(rng, 200, false);
    const auto b = Draw(rng, 200, false, 0.1 * (rep % 4));
    const double asym = KsUnivariate(a, b).p_value;
    const double perm = KsUnivariatePermutation(a, b, 2000, rep).p_value;
    CHECK(std::abs(asym - perm) <= 0.05);
  }
}

TEST_CASE("bivariate D equals exhaustive quadrant counting") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 60; ++rep) {
    const bool ties = rep % 3 == 0;
    const auto a = Draw2d(rng, 4 + rep % 30, ties);
    const auto b = Draw2d(rng, 2 + rep % 17, ties, 0.4);
    const double want = oracle::FfBruteForce(a, b);
    CHECK(FasanoFranceschiniStatistic(a, b) == doctest::Approx(want).epsilon(1e-12));
    BivariateOpts opts;
    opts.method = KsMethod::kAsymptotic;
    CHECK(KsBivariate(a, b, opts).statistic == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("bivariate test separates shifted clouds and is seeded") {
  std::mt19937_64 rng(4);
  const auto a = Draw2d(rng, 150, false);
  const auto b = Draw2d(rng, 150, false, 1.0);
  BivariateOpts opts;
  opts.permutations = 200;
  opts.seed = 9;
  const KsResult r = KsBivariate(a, b, opts);
  CHECK(r.p_value == doctest::Approx(1.0 / 201.0));
  CHECK(KsBivariate(a, b, opts).p_value == r.p_value);
  opts.method = KsMethod::kAsymptotic;
  CHECK(KsBivariate(a, b, opts).p_value < 1e-4);
  CHECK_THROWS_AS(KsBivariate(std::vector<Vec>{{1, 2, 3}}, a), DomainError);
}

TEST_CASE("univariate permutation p-values are roughly uniform under the null") {
  std::mt19937_64 rng(5);
  double sum = 0.0;
  int below = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto a = Draw(rng, 200, false);
    const auto b = Draw(rng, 200, false);
    const double p = KsUnivariatePermutation(a, b, 500, t).p_value;
    sum += p;
    below += p < 0.05 ? 1 : 0;
  }
  CHECK(sum / trials >= 0.45);
  CHECK(sum / trials <= 0.55);
  CHECK(below >= 4);
  CHECK(below <= 18);
}

TEST_CASE("bivariate permutation p-values are roughly uniform under the null") {
  std::mt19937_64 rng(6);
  double sum = 0.0;
  int below = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto a = Draw2d(rng, 100, false);
    const auto b = Draw2d(rng, 100, false);
    BivariateOpts opts;
    opts.seed = static_cast<std::uint64_t>(t);
    const double p = KsBivariate(a, b, opts).p_value;
    sum += p;
    below += p < 0.05 ? 1 : 0;
  }
  CHECK(sum / trials >= 0.45);
  CHECK(sum / trials <= 0.55);
  CHECK(below >= 4);
  CHECK(below <= 18);
}

TEST_CASE("average of p-values") {
  std::vector<KsResult> rs(3);
  rs[0].p_value = 0.1;
  rs[1].p_value = 0.5;
  rs[2].p_value = 0.9;
  CHECK(AveragePValues(rs) == doctest::Approx(0.5));
  CHECK_THROWS_AS(AveragePValues(std::vector<KsResult>{}), DomainError);
}

TEST_CASE("boxplot summary uses linear interpolation quantiles") {
  const std::vector<double> v{9, 1, 8, 2, 7, 3, 6, 4, 5};
  const BoxplotSummary s = SummarizeBoxplot(v);
  CHECK(s.min == 1);
  CHECK(s.q1 == 3);
  CHECK(s.median == 5);
  CHECK(s.q3 == 7);
  CHECK(s.max == 9);
  CHECK(s.outliers.empty());
  const BoxplotSummary o = SummarizeBoxplot(std::vector<double>{1, 2, 3, 4, 100});
  CHECK(o.outliers == std::vector<double>{100});
  CHECK(Quantile(std::vector<double>{0, 10}, 0.25) == doctest::Approx(2.5));
  CHECK(Median(std::vector<double>{4, 1, 3, 2}) == doctest::Approx(2.5));
}

TEST_CASE("Spearman correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(SpearmanCorrelation(x, std::vector<double>{2, 4, 8, 16, 32}) == doctest::Approx(1.0));
  CHECK(SpearmanCorrelation(x, std::vector<double>{5, 3, 2, 1, 0}) == doctest::Approx(-1.0));
  // Ties take average ranks: y ranks {1.5, 1.5, 3, 4, 5}.
  const double r = SpearmanCorrelation(x, std::vector<double>{1, 1, 2, 3, 4});
  CHECK(r == doctest::Approx(0.9746794).epsilon(1e-6));
}
