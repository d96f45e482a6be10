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
#include <filesystem>
#include <numeric>
#include <random>

#include "doctest.h"
#include "miabench/errors.h"
#include "miabench/mlp.h"
#include "miabench/synthdata.h"
#include "oracles.h"

using namespace miabench;

namespace {

struct Batch {
  std::vector<Vec> xs;
  std::vector<Vec> ys;
  std::vector<Example> examples;
};

Batch RandomBatch(std::mt19937_64& rng, std::size_t m, std::size_t d, std::size_t k,
                  bool soft) {
  Batch b;
  std::uniform_int_distribution<std::size_t> cls(0, k - 1);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    b.xs.push_back(oracle::RandomVec(rng, d, 1.5));
    Vec y(k, 0.0);
    if (soft) {
      double s = 0.0;
      for (double& v : y) s += (v = u(rng));
      for (double& v : y) v /= s;
    } else {
      y[cls(rng)] = 1.0;
    }
    b.ys.push_back(std::move(y));
  }
  for (std::size_t i = 0; i < m; ++i) b.examples.push_back({b.xs[i], b.ys[i]});
  return b;
}

}  // namespace

TEST_CASE("forward pass agrees with a hand-written evaluation") {
  std::mt19937_64 rng(1);
  for (Activation act : {Activation::kRelu, Activation::kTanh}) {
    const MlpClassifier model = MlpClassifier::GlorotInit({3, 7, 5, 4}, act, 9);
    for (int rep = 0; rep < 20; ++rep) {
      const Vec x = oracle::RandomVec(rng, 3);
      const Vec got = model.Forward(x);
      const Vec want = oracle::Forward(model, x);
      for (std::size_t j = 0; j < 4; ++j) CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-12));
      CHECK(model.MaxScore(x) == *std::max_element(got.begin(), got.end()));
      CHECK(model.Predict(x) == Argmax(got));
    }
  }
}

TEST_CASE("a zero model outputs the uniform distribution") {
  const MlpClassifier model({2, 4, 3}, Activation::kRelu);
  const Vec p = model.Forward(Vec{0.3, -2.0});
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("softmax is stable for large pre-activations") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int rep = 0; rep < 200; ++rep) {
    Vec z(2 + rep % 9);
    for (double& v : z) v = u(rng);
    const Vec p = Softmax(z);
    double s = 0.0;
    for (double v : p) {
      CHECK(std::isfinite(v));
      s += v;
    }
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
  const Vec p = Softmax(Vec{1000.0, 1000.0});
  CHECK(p[0] == doctest::Approx(0.5));
}

TEST_CASE("argmax breaks ties toward the smaller index") {
  CHECK(Argmax(Vec{0.2, 0.4, 0.4}) == 1);
  CHECK(Argmax(Vec{1.0}) == 0);
}

TEST_CASE("parameter gradients match central differences") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 12; ++rep) {
    const bool relu = rep % 2 == 0;
    const std::size_t d = 2 + rep % 3;
    const std::size_t k = 2 + rep % 4;
    MlpClassifier model = MlpClassifier::GlorotInit(
        {d, 6, 5, k}, relu ? Activation::kRelu : Activation::kTanh, 100 + rep);
    oracle::JitterBiases(model, rng);
    const Batch b = RandomBatch(rng, 5, d, k, rep % 3 == 0);
    CHECK(oracle::GradientCheck(model, b.examples) < 1e-4);
  }
}

TEST_CASE("input jacobian matches central differences of the logits") {
  std::mt19937_64 rng(6);
  const MlpClassifier model = MlpClassifier::GlorotInit({3, 8, 8, 4}, Activation::kTanh, 3);
  for (int rep = 0; rep < 10; ++rep) {
    Vec x = oracle::RandomVec(rng, 3);
    const LogitJacobian jac = InputJacobian(model, x);
    CHECK(jac.logits == model.Logits(x));
    for (std::size_t c = 0; c < 3; ++c) {
      const double keep = x[c];
      x[c] = keep + 1e-6;
      const Vec up = model.Logits(x);
      x[c] = keep - 1e-6;
      const Vec down = model.Logits(x);
      x[c] = keep;
      for (std::size_t r = 0; r < 4; ++r) {
        CHECK(jac.jacobian[r * 3 + c] == doctest::Approx((up[r] - down[r]) / 2e-6).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("cross-entropy of a uniform model is log K") {
  const MlpClassifier model({2, 3}, Activation::kRelu);
  const Vec x{1.0, 2.0};
  const SoftLabel y = SoftLabel::OneHot(1, 3);
  const Example e{x, y.probs};
  CHECK(CrossEntropy(model, std::span<const Example>(&e, 1)) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("batch sampler visits every index once per pass") {
  BatchSampler s(10, 4, 3, true);
  std::vector<int> seen(10, 0);
  for (int b = 0; b < 5; ++b) {
    for (std::size_t i : s.Next()) ++seen[i];
  }
  for (int c : seen) CHECK(c == 2);
  BatchSampler plain(5, 2, 0, false);
  CHECK(std::vector<std::size_t>(plain.Next().begin(), plain.Next().end()).size() == 2);
  CHECK_THROWS_AS(BatchSampler(3, 4, 0, true), ConfigError);
}

TEST_CASE("training fits separable data and is bitwise reproducible") {
  GenConfig g;
  g.n_samples = 200;
  g.class_separation = 4.0;
  g.cluster_std = 0.5;
  const DatasetPair data = GenerateDataset(g);
  TrainOpts opts;
  opts.iterations = 800;
  opts.batch_size = 16;
  opts.seed = 5;
  const MlpClassifier init = MlpClassifier::GlorotInit({2, 10, 10, 4}, Activation::kRelu, 1);
  const double before = DatasetLoss(init, data.train);
  const MlpClassifier a = Train(init, data.train, opts);
  const MlpClassifier b = Train(init, data.train, opts);
  CHECK(DatasetLoss(a, data.train) < 0.25 * before);
  CHECK(Accuracy(a, data.test) > 0.95);
  for (std::size_t l = 0; l < a.layers().size(); ++l) {
    CHECK(a.layers()[l].weights == b.layers()[l].weights);
    CHECK(a.layers()[l].bias == b.layers()[l].bias);
  }
}

TEST_CASE("hard-label training equals soft training on one-hot targets") {
  GenConfig g;
  g.n_samples = 40;
  const LabeledDataset ds = GenerateDataset(g).train;
  std::vector<SoftLabel> targets;
  for (ClassId y : ds.labels) targets.push_back(SoftLabel::OneHot(y, ds.n_classes));
  TrainOpts opts;
  opts.iterations = 50;
  opts.batch_size = 8;
  const MlpClassifier init = MlpClassifier::GlorotInit({2, 5, 4}, Activation::kTanh, 2);
  const MlpClassifier a = Train(init, ds, opts);
  const MlpClassifier b = TrainSoft(init, ds.points, targets, opts);
  CHECK(a.layers()[0].weights == b.layers()[0].weights);
}

TEST_CASE("invalid training options are rejected") {
  TrainOpts opts;
  opts.batch_size = 0;
  CHECK_THROWS_AS(opts.Validate(10), ConfigError);
  opts = TrainOpts{};
  opts.learning_rate = -0.1;
  CHECK_THROWS_AS(opts.Validate(100), ConfigError);
  opts = TrainOpts{};
  CHECK_THROWS_AS(opts.Validate(10), ConfigError);
}

TEST_CASE("model files round-trip exactly") {
  const MlpClassifier model = MlpClassifier::GlorotInit({2, 4, 3}, Activation::kTanh, 8);
  const auto path = std::filesystem::temp_directory_path() / "miabench_model_rt.json";
  SaveModel(model, path.string());
  const MlpClassifier back = LoadModel(path.string());
  CHECK(back.layer_sizes() == model.layer_sizes());
  CHECK(back.activation() == model.activation());
  for (std::size_t l = 0; l < model.layers().size(); ++l) {
    CHECK(back.layers()[l].weights == model.layers()[l].weights);
  }
  std::filesystem::remove(path);
}
