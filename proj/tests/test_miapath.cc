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
#include <numbers>
#include <random>

#include "doctest.h"
#include "miabench/advattack.h"
#include "miabench/errors.h"
#include "miabench/miapath.h"
#include "oracles.h"

using namespace miabench;

TEST_CASE("arc length of sampled values") {
  CHECK(ArcLength(std::vector<double>{0.9, 0.7, 0.8, 0.5}) == doctest::Approx(0.2 + 0.1 + 0.3));
  CHECK_THROWS_AS(ArcLength(std::vector<double>{0.4}), DomainError);
  // Monotone functions collapse to the endpoint difference for every N.
  auto f = [](double t) { return 1.0 - 0.5 * t * t; };
  for (std::size_t n : {1u, 2u, 7u, 30u, 1024u}) {
    CHECK(SampledArcLength(f, n) == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(SampledArcLength(f, 0), DomainError);
}

TEST_CASE("arc length of a full sine period is four times the amplitude") {
  auto f = [](double t) { return 0.3 * std::sin(2.0 * std::numbers::pi * t); };
  CHECK(SampledArcLength(f, 4) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(SampledArcLength(f, 3) < 1.2);
}

TEST_CASE("the discretization bound holds for a sine with known derivative") {
  const double freq = 3.0;
  auto f = [&](double t) { return std::sin(2.0 * std::numbers::pi * freq * t); };
  const double exact = 4.0 * freq;  // 3 full periods
  const double deriv_sup = 2.0 * std::numbers::pi * freq;
  const double n_intervals = 2.0 * freq + 1.0;
  for (std::size_t n = 16; n <= 4096; n *= 2) {
    const double gap = exact - SampledArcLength(f, n);
    CHECK(gap >= -1e-12);
    CHECK(gap <= ArcLengthGapBound(deriv_sup, n_intervals, 1.0 / n) + 1e-12);
  }
  CHECK_THROWS_AS(ArcLengthGapBound(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("sampled path endpoints are the model scores") {
  const MlpClassifier model = MlpClassifier::GlorotInit({2, 6, 3}, Activation::kTanh, 1);
  const Vec x{0.2, -0.4}, eps{1.0, 0.5};
  const AdversarialPath p = SamplePath(model, x, eps, 30);
  REQUIRE(p.values.size() == 31);
  CHECK(p.partition.front() == 0.0);
  CHECK(p.partition.back() == 1.0);
  CHECK(p.values.front() == model.MaxScore(x));
  CHECK(p.values.back() == model.MaxScore(Vec{1.2, 0.1}));
  const double fine = ExactArcLengthOracle(model, x, eps);
  CHECK(ArcLength(p.values) <= fine + 1e-12);
}

TEST_CASE("strategy scores") {
  const MlpClassifier model = MlpClassifier::GlorotInit({2, 4, 3}, Activation::kRelu, 2);
  AdversarialExample adv;
  adv.x = {1.0, 1.0};
  adv.epsilon = {3.0, -4.0};
  adv.x_adv = {4.0, -3.0};
  CHECK(MiaScore({MiaStrategy::kDistanceL1, 0, {}}, model, adv) == 7.0);
  CHECK(MiaScore({MiaStrategy::kDistanceL2, 0, {}}, model, adv) == 5.0);
  CHECK(MiaScore({MiaStrategy::kDistanceLinf, 0, {}}, model, adv) == 4.0);
  CHECK(MiaScore({MiaStrategy::kArcLength, 0, {}}, model, adv, 16) ==
        ArcLength(SamplePath(model, adv.x, adv.epsilon, 16).values));
  MiaRule custom{MiaStrategy::kCustom, 0, [](const MlpClassifier& m, std::span<const double> x,
                                            std::span<const double> xa) {
                   return m.MaxScore(x) - m.MaxScore(xa);
                 }};
  CHECK(MiaScore(custom, model, adv) == model.MaxScore(adv.x) - model.MaxScore(adv.x_adv));
  CHECK_THROWS_AS(MiaScore({MiaStrategy::kCustom, 0, {}}, model, adv), ConfigError);
  CHECK(MiaDecide(0.5, 0.5));
  CHECK_FALSE(MiaDecide(0.49, 0.5));
}

TEST_CASE("strategy names parse back") {
  for (MiaStrategy s : {MiaStrategy::kArcLength, MiaStrategy::kDistanceL1,
                        MiaStrategy::kDistanceL2, MiaStrategy::kDistanceLinf}) {
    CHECK(ParseMiaStrategy(MiaStrategyName(s)) == s);
  }
  CHECK(ParseMiaStrategy("sisyphos") == MiaStrategy::kArcLength);
  CHECK(ParseMiaStrategy("dist-l2") == MiaStrategy::kDistanceL2);
  CHECK_THROWS_AS(ParseMiaStrategy("nope"), ConfigError);
}

TEST_CASE("AUC matches pair counting, ties included") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> u(0, 9);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> in(1 + rep % 17), out(1 + rep % 13);
    for (double& v : in) v = u(rng) + (rep % 2 ? 1.0 : 0.0);
    for (double& v : out) v = u(rng);
    const EvalReport r = EvaluateAttack(in, out);
    CHECK(r.auc == doctest::Approx(oracle::PairCountingAuc(in, out)).epsilon(1e-12));
    CHECK(r.roc.front().fpr == 0.0);
    CHECK(r.roc.back().fpr == 1.0);
    CHECK(r.roc.back().tpr == 1.0);
    for (std::size_t i = 1; i < r.roc.size(); ++i) {
      CHECK(r.roc[i].fpr >= r.roc[i - 1].fpr);
      CHECK(r.roc[i].tpr >= r.roc[i - 1].tpr);
    }
    CHECK(r.best_accuracy >= 0.5);
    CHECK(r.best_accuracy <= 1.0);
  }
}

TEST_CASE("evaluation of separable and constant scores") {
  const EvalReport sep = EvaluateAttack(std::vector<double>{3, 4, 5}, std::vector<double>{0, 1});
  CHECK(sep.auc == 1.0);
  CHECK(sep.best_accuracy == 1.0);
  CHECK(sep.best_threshold == 3.0);
  const EvalReport flat = EvaluateAttack(std::vector<double>{1, 1}, std::vector<double>{1, 1, 1});
  CHECK(flat.auc == doctest::Approx(0.5));
  CHECK(flat.best_accuracy == 0.5);
  CHECK_THROWS_AS(EvaluateAttack(std::vector<double>{}, std::vector<double>{1}), DomainError);
}
