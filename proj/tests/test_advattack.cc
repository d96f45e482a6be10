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
#include "miabench/advattack.h"
#include "miabench/errors.h"
#include "oracles.h"

using namespace miabench;

namespace {

// Two-class linear model with logit difference w.x + b.
MlpClassifier LinearModel(const Vec& w, double b) {
  MlpClassifier m({w.size(), 2}, Activation::kRelu);
  DenseLayer& l = m.layers()[0];
  for (std::size_t j = 0; j < w.size(); ++j) l.W(1, j) = w[j];
  l.bias[1] = b;
  return m;
}

ClassStats StatsFor(Vec c0, Vec c1) {
  ClassStats s;
  s.barycenters = {std::move(c0), std::move(c1)};
  s.intra_distance = {1.0, 1.0};
  s.counts = {1, 1};
  return s;
}

}  // namespace

TEST_CASE("minimal attack on a linear model reaches the exact boundary distance") {
  std::mt19937_64 rng(1);
  AttackOpts opts;
  opts.bisect_tol = 1e-8;
  for (int rep = 0; rep < 50; ++rep) {
    const Vec w = oracle::RandomVec(rng, 3);
    const double b = oracle::RandomVec(rng, 1)[0];
    const MlpClassifier model = LinearModel(w, b);
    const Vec x = oracle::RandomVec(rng, 3, 2.0);
    const AdversarialExample adv = FindAdversarial(model, x, opts);
    const double want = std::abs(Dot(w, x) + b) / NormL2(w);
    CHECK(adv.eps_norm_l2 >= want * (1.0 - 1e-9));
    CHECK(adv.eps_norm_l2 <= want + 1e-6 * std::max(1.0, want));
    CHECK(adv.y_orig == model.Predict(x));
    CHECK(adv.y_adv != adv.y_orig);
    CHECK(model.Predict(adv.x_adv) == adv.y_adv);
    for (std::size_t j = 0; j < 3; ++j) CHECK(adv.x_adv[j] == x[j] + adv.epsilon[j]);
    CHECK(adv.eps_norm_l2 == NormL2(adv.epsilon));
  }
}

TEST_CASE("minimal attack flips nonlinear models close to the boundary") {
  std::mt19937_64 rng(2);
  const MlpClassifier model = MlpClassifier::GlorotInit({2, 16, 16, 4}, Activation::kRelu, 5);
  AttackOpts opts;
  for (int rep = 0; rep < 50; ++rep) {
    const Vec x = oracle::RandomVec(rng, 2);
    AdversarialExample adv;
    try {
      adv = FindAdversarial(model, x, opts);
    } catch (const NotFooled&) {
      continue;
    }
    CHECK(model.Predict(adv.x_adv) != model.Predict(x));
    // Stepping back by the bisection tolerance returns to the original class.
    const Vec inner = Axpy(x, 1.0 - 2.0 * opts.bisect_tol / adv.eps_norm_l2, adv.epsilon);
    CHECK(model.Predict(inner) == adv.y_orig);
  }
}

TEST_CASE("a constant model cannot be fooled") {
  const MlpClassifier model({2, 3}, Activation::kRelu);
  CHECK_THROWS_AS(FindAdversarial(model, Vec{1.0, 1.0}, AttackOpts{}), NotFooled);
  try {
    FindAdversarial(model, Vec{1.0, 1.0}, AttackOpts{});
  } catch (const NotFooled& e) {
    CHECK(e.best().x == Vec{1.0, 1.0});
  }
}

TEST_CASE("bisection finds the crossing on a segment") {
  const MlpClassifier model = LinearModel({1.0, 0.0}, -0.3);
  const double t = BisectFraction(model, Vec{0.0, 0.0}, Vec{1.0, 0.0}, 1e-9);
  CHECK(t == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(model.Predict(Axpy(Vec{0.0, 0.0}, t, Vec{1.0, 0.0})) == 1);
  const Vec b = BisectBoundary(model, Vec{0.0, 0.0}, Vec{1.0, 0.0}, 1e-9);
  CHECK(b[0] == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("invalid attack options are rejected") {
  AttackOpts opts;
  opts.bisect_tol = 0.0;
  CHECK_THROWS_AS(opts.Validate(), ConfigError);
  opts = AttackOpts{};
  opts.max_iters = 0;
  CHECK_THROWS_AS(opts.Validate(), ConfigError);
}

TEST_CASE("the directed heuristic never beats the minimal attack on linear models") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 40; ++rep) {
    const Vec w = oracle::RandomVec(rng, 2);
    const MlpClassifier model = LinearModel(w, 0.0);
    const Vec x = oracle::RandomVec(rng, 2);
    const ClassId y = model.Predict(x);
    // Opposing barycenter placed deep on the other side of the boundary.
    Vec far = w;
    for (double& v : far) v *= (y == 0 ? 5.0 : -5.0);
    const ClassStats stats = y == 0 ? StatsFor(Vec{0.0, 0.0}, far) : StatsFor(far, Vec{0.0, 0.0});
    const AdversarialExample h = DirectedHeuristicAttack(model, x, stats);
    const AdversarialExample m = FindAdversarial(model, x, AttackOpts{});
    CHECK(model.Predict(h.x_adv) != y);
    CHECK(m.eps_norm_l2 <= h.eps_norm_l2 + 1e-9);
  }
}
