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
#ifndef MIABENCH_MLP_H_
#define MIABENCH_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "miabench/rng.h"
#include "miabench/synthdata.h"
#include "miabench/vec.h"

namespace miabench {

enum class Activation { kRelu, kTanh };

const char* ActivationName(Activation a);
Activation ParseActivation(std::string_view name);

// Affine map from `in` to `out` units. Weights are row-major (out x in).
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  DenseLayer() = default;
  DenseLayer(std::size_t in_units, std::size_t out_units)
      : in(in_units), out(out_units), weights(in_units * out_units, 0.0),
        bias(out_units, 0.0) {}

  double& W(std::size_t row, std::size_t col) { return weights[row * in + col]; }
  double W(std::size_t row, std::size_t col) const { return weights[row * in + col]; }
};

// Same shape as the model's layers; holds d(loss)/d(parameter).
using ParamGradient = std::vector<DenseLayer>;

// Multilayer perceptron with a softmax output. Hidden layers use the chosen
// activation; the last layer is affine only. A model with layer_sizes {d, K}
// is multinomial logistic regression.
class MlpClassifier {
 public:
  MlpClassifier() = default;
  // All parameters zero.
  MlpClassifier(std::vector<std::size_t> layer_sizes, Activation activation);

  // Uniform(-a, a) weights with a = sqrt(6 / (fan_in + fan_out)), zero biases.
  static MlpClassifier GlorotInit(std::vector<std::size_t> layer_sizes,
                                  Activation activation, std::uint64_t seed);

  const std::vector<std::size_t>& layer_sizes() const { return layer_sizes_; }
  Activation activation() const { return activation_; }
  std::size_t input_dim() const { return layer_sizes_.front(); }
  std::size_t n_classes() const { return layer_sizes_.back(); }
  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  // Pre-softmax outputs.
  Vec Logits(std::span<const double> x) const;
  // Softmax scores; non-negative and summing to one.
  Vec Forward(std::span<const double> x) const;
  ClassId Predict(std::span<const double> x) const;
  // Largest softmax component.
  double MaxScore(std::span<const double> x) const;

  // Checks layer shapes against layer_sizes. Throws ValidationError.
  void Validate() const;

 private:
  std::vector<std::size_t> layer_sizes_;
  Activation activation_ = Activation::kRelu;
  std::vector<DenseLayer> layers_;
};

// Numerically stable softmax (max-shifted).
Vec Softmax(std::span<const double> logits);

// Index of the largest entry; ties resolve to the smallest index.
ClassId Argmax(std::span<const double> v);

struct SoftLabel {
  Vec probs;

  static SoftLabel OneHot(ClassId y, std::size_t n_classes);
  // Components must be non-negative and sum to one within 1e-12.
  void Validate() const;
};

// One training example: an input and a target distribution.
struct Example {
  std::span<const double> x;
  std::span<const double> target;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Mean over the batch of -sum_j target_j * log(max(p_j, floor)).
double CrossEntropy(const MlpClassifier& model, std::span<const Example> batch);

// Exact gradient of CrossEntropy with respect to every weight and bias.
ParamGradient Gradient(const MlpClassifier& model, std::span<const Example> batch);

// Logits and their Jacobian with respect to the input, row-major
// (n_classes x input_dim).
struct LogitJacobian {
  Vec logits;
  std::vector<double> jacobian;
};
LogitJacobian InputJacobian(const MlpClassifier& model, std::span<const double> x);

struct TrainOpts {
  std::size_t iterations = 5000;
  std::size_t batch_size = 64;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  bool shuffle = true;

  // Throws ConfigError. n is the training set size.
  void Validate(std::size_t n) const;
};

// Yields mini-batches of indices into a dataset of size n. Batches walk
// through a permutation of [0, n) (identity when shuffle is off) and wrap
// into a freshly shuffled pass when it is exhausted.
class BatchSampler {
 public:
  BatchSampler(std::size_t n, std::size_t batch_size, std::uint64_t seed,
               bool shuffle);
  std::span<const std::size_t> Next();

 private:
  void Refill();

  std::size_t n_;
  std::size_t batch_size_;
  bool shuffle_;
  Rng rng_;
  std::vector<std::size_t> order_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> batch_;
};

// One plain SGD step on the batch.
void SgdStep(MlpClassifier& model, std::span<const Example> batch,
             double learning_rate);

// Mini-batch SGD for opts.iterations steps on one-hot targets.
MlpClassifier Train(MlpClassifier model, const LabeledDataset& ds,
                    const TrainOpts& opts);

// Same as Train with explicit per-sample target distributions.
MlpClassifier TrainSoft(MlpClassifier model, std::span<const Vec> inputs,
                        std::span<const SoftLabel> targets, const TrainOpts& opts);

// Full-dataset mean cross-entropy against one-hot labels.
double DatasetLoss(const MlpClassifier& model, const LabeledDataset& ds);
double Accuracy(const MlpClassifier& model, const LabeledDataset& ds);

void SaveModel(const MlpClassifier& model, const std::string& path);
MlpClassifier LoadModel(const std::string& path);

}  // namespace miabench

#endif  // MIABENCH_MLP_H_
