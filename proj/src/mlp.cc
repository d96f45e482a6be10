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
#include "miabench/mlp.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "miabench/errors.h"
#include "miabench/io.h"

namespace miabench {

const char* ActivationName(Activation a) {
  return a == Activation::kRelu ? "relu" : "tanh";
}

Activation ParseActivation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  throw ParseError("unknown activation: " + std::string(name));
}

namespace {

double Activate(Activation a, double z) {
  return a == Activation::kRelu ? (z > 0.0 ? z : 0.0) : std::tanh(z);
}

// Derivative expressed through the pre-activation.
double ActivateDeriv(Activation a, double z) {
  if (a == Activation::kRelu) return z > 0.0 ? 1.0 : 0.0;
  const double t = std::tanh(z);
  return 1.0 - t * t;
}

void Affine(const DenseLayer& layer, std::span<const double> in,
            std::vector<double>& out) {
  out.assign(layer.out, 0.0);
  for (std::size_t r = 0; r < layer.out; ++r) {
    const double* row = &layer.weights[r * layer.in];
    double s = layer.bias[r];
    for (std::size_t c = 0; c < layer.in; ++c) s += row[c] * in[c];
    out[r] = s;
  }
}

// Pre-activations and post-activations of every layer for one input.
struct Trace {
  std::vector<Vec> pre;   // pre[l] = z of layer l
  std::vector<Vec> post;  // post[0] = x, post[l + 1] = activation of layer l
};

Trace Run(const MlpClassifier& model, std::span<const double> x) {
  const auto& layers = model.layers();
  Trace t;
  t.pre.resize(layers.size());
  t.post.resize(layers.size() + 1);
  t.post[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Affine(layers[l], t.post[l], t.pre[l]);
    if (l + 1 == layers.size()) {
      t.post[l + 1] = t.pre[l];
    } else {
      t.post[l + 1].resize(t.pre[l].size());
      for (std::size_t i = 0; i < t.pre[l].size(); ++i) {
        t.post[l + 1][i] = Activate(model.activation(), t.pre[l][i]);
      }
    }
  }
  return t;
}

void RequireInput(const MlpClassifier& model, std::span<const double> x) {
  if (model.layers().empty()) throw ValidationError("model has no layers");
  if (x.size() != model.input_dim()) {
    throw DomainError("input dimension " + std::to_string(x.size()) +
                      " does not match model input width " +
                      std::to_string(model.input_dim()));
  }
}

void RequireBatch(const MlpClassifier& model, std::span<const Example> batch) {
  if (batch.empty()) throw DomainError("empty batch");
  for (const Example& e : batch) {
    RequireInput(model, e.x);
    if (e.target.size() != model.n_classes()) {
      throw DomainError("target width does not match model output width");
    }
  }
}

}  // namespace

MlpClassifier::MlpClassifier(std::vector<std::size_t> layer_sizes,
                             Activation activation)
    : layer_sizes_(std::move(layer_sizes)), activation_(activation) {
  if (layer_sizes_.size() < 2) {
    throw ConfigError("an MLP needs at least input and output widths");
  }
  for (std::size_t w : layer_sizes_) {
    if (w == 0) throw ConfigError("layer widths must be positive");
  }
  if (layer_sizes_.back() < 2) throw ConfigError("output width must be at least 2");
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    layers_.emplace_back(layer_sizes_[l], layer_sizes_[l + 1]);
  }
}

MlpClassifier MlpClassifier::GlorotInit(std::vector<std::size_t> layer_sizes,
                                        Activation activation,
                                        std::uint64_t seed) {
  MlpClassifier model(std::move(layer_sizes), activation);
  Rng rng(seed);
  for (DenseLayer& layer : model.layers_) {
    const double a = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    std::uniform_real_distribution<double> dist(-a, a);
    for (double& w : layer.weights) w = dist(rng);
  }
  return model;
}

Vec MlpClassifier::Logits(std::span<const double> x) const {
  RequireInput(*this, x);
  Vec cur(x.begin(), x.end());
  Vec next;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Affine(layers_[l], cur, next);
    if (l + 1 < layers_.size()) {
      for (double& v : next) v = Activate(activation_, v);
    }
    cur.swap(next);
  }
  return cur;
}

Vec MlpClassifier::Forward(std::span<const double> x) const {
  return Softmax(Logits(x));
}

ClassId MlpClassifier::Predict(std::span<const double> x) const {
  return Argmax(Logits(x));
}

double MlpClassifier::MaxScore(std::span<const double> x) const {
  const Vec p = Forward(x);
  return *std::max_element(p.begin(), p.end());
}

void MlpClassifier::Validate() const {
  if (layer_sizes_.size() < 2) throw ValidationError("need at least two layer widths");
  if (layers_.size() + 1 != layer_sizes_.size()) {
    throw ValidationError("layer count does not match layer_sizes");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    if (layer.in != layer_sizes_[l] || layer.out != layer_sizes_[l + 1] ||
        layer.weights.size() != layer.in * layer.out ||
        layer.bias.size() != layer.out) {
      throw ValidationError("layer " + std::to_string(l) +
                            " shape does not match layer_sizes");
    }
  }
  if (n_classes() < 2) throw ValidationError("output width must be at least 2");
}

Vec Softmax(std::span<const double> logits) {
  if (logits.empty()) throw DomainError("softmax of empty vector");
  const double m = *std::max_element(logits.begin(), logits.end());
  Vec p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - m);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

ClassId Argmax(std::span<const double> v) {
  if (v.empty()) throw DomainError("argmax of empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<ClassId>(best);
}

SoftLabel SoftLabel::OneHot(ClassId y, std::size_t n_classes) {
  if (y >= n_classes) throw DomainError("label out of range");
  SoftLabel s;
  s.probs.assign(n_classes, 0.0);
  s.probs[y] = 1.0;
  return s;
}

void SoftLabel::Validate() const {
  if (probs.empty()) throw ValidationError("empty soft label");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("soft label has a negative component");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ValidationError("soft label does not sum to 1");
}

double CrossEntropy(const MlpClassifier& model, std::span<const Example> batch) {
  RequireBatch(model, batch);
  double total = 0.0;
  for (const Example& e : batch) {
    const Vec p = model.Forward(e.x);
    double loss = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (e.target[j] != 0.0) {
        loss -= e.target[j] * std::log(std::max(p[j], kProbabilityFloor));
      }
    }
    total += loss;
  }
  return total / static_cast<double>(batch.size());
}

ParamGradient Gradient(const MlpClassifier& model, std::span<const Example> batch) {
  RequireBatch(model, batch);
  const auto& layers = model.layers();
  ParamGradient grad;
  grad.reserve(layers.size());
  for (const DenseLayer& layer : layers) grad.emplace_back(layer.in, layer.out);

  const double inv_m = 1.0 / static_cast<double>(batch.size());
  Vec delta;
  Vec prev;
  for (const Example& e : batch) {
    const Trace t = Run(model, e.x);
    const Vec p = Softmax(t.pre.back());

    // d/dz_i of -sum_j y_j log(max(p_j, floor)); components clamped at the
    // floor contribute nothing.
    double active_mass = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] >= kProbabilityFloor) active_mass += e.target[j];
    }
    delta.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double own = p[i] >= kProbabilityFloor ? e.target[i] : 0.0;
      delta[i] = (p[i] * active_mass - own) * inv_m;
    }

    for (std::size_t l = layers.size(); l-- > 0;) {
      const DenseLayer& layer = layers[l];
      DenseLayer& g = grad[l];
      const Vec& input = t.post[l];
      for (std::size_t r = 0; r < layer.out; ++r) {
        const double d = delta[r];
        g.bias[r] += d;
        double* grow = &g.weights[r * layer.in];
        for (std::size_t c = 0; c < layer.in; ++c) grow[c] += d * input[c];
      }
      if (l == 0) break;
      prev.assign(layer.in, 0.0);
      for (std::size_t r = 0; r < layer.out; ++r) {
        const double* row = &layer.weights[r * layer.in];
        for (std::size_t c = 0; c < layer.in; ++c) prev[c] += row[c] * delta[r];
      }
      for (std::size_t c = 0; c < layer.in; ++c) {
        prev[c] *= ActivateDeriv(model.activation(), t.pre[l - 1][c]);
      }
      delta.swap(prev);
    }
  }
  return grad;
}

LogitJacobian InputJacobian(const MlpClassifier& model, std::span<const double> x) {
  RequireInput(model, x);
  const auto& layers = model.layers();
  const std::size_t d = model.input_dim();
  Vec cur(x.begin(), x.end());
  // jac: (width of cur) x d, starts as identity.
  std::vector<double> jac(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) jac[i * d + i] = 1.0;
  Vec z;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    Affine(layer, cur, z);
    std::vector<double> next(layer.out * d, 0.0);
    for (std::size_t r = 0; r < layer.out; ++r) {
      for (std::size_t c = 0; c < layer.in; ++c) {
        const double w = layer.W(r, c);
        if (w == 0.0) continue;
        for (std::size_t k = 0; k < d; ++k) next[r * d + k] += w * jac[c * d + k];
      }
    }
    if (l + 1 < layers.size()) {
      for (std::size_t r = 0; r < layer.out; ++r) {
        const double s = ActivateDeriv(model.activation(), z[r]);
        for (std::size_t k = 0; k < d; ++k) next[r * d + k] *= s;
        z[r] = Activate(model.activation(), z[r]);
      }
    }
    jac.swap(next);
    cur.swap(z);
  }
  return {std::move(cur), std::move(jac)};
}

void TrainOpts::Validate(std::size_t n) const {
  if (n == 0) throw ConfigError("training set is empty");
  if (batch_size == 0 || batch_size > n) {
    throw ConfigError("batch_size must satisfy 0 < m <= n");
  }
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be finite and non-negative");
  }
}

BatchSampler::BatchSampler(std::size_t n, std::size_t batch_size,
                           std::uint64_t seed, bool shuffle)
    : n_(n), batch_size_(batch_size), shuffle_(shuffle), rng_(seed), order_(n) {
  if (n == 0 || batch_size == 0 || batch_size > n) {
    throw ConfigError("batch sampler needs 0 < batch_size <= n");
  }
  Refill();
}

void BatchSampler::Refill() {
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (shuffle_) std::shuffle(order_.begin(), order_.end(), rng_);
  pos_ = 0;
}

std::span<const std::size_t> BatchSampler::Next() {
  batch_.clear();
  while (batch_.size() < batch_size_) {
    if (pos_ == n_) Refill();
    batch_.push_back(order_[pos_++]);
  }
  return batch_;
}

void SgdStep(MlpClassifier& model, std::span<const Example> batch,
             double learning_rate) {
  const ParamGradient grad = Gradient(model, batch);
  auto& layers = model.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (std::size_t i = 0; i < layers[l].weights.size(); ++i) {
      layers[l].weights[i] -= learning_rate * grad[l].weights[i];
    }
    for (std::size_t i = 0; i < layers[l].bias.size(); ++i) {
      layers[l].bias[i] -= learning_rate * grad[l].bias[i];
    }
  }
}

MlpClassifier TrainSoft(MlpClassifier model, std::span<const Vec> inputs,
                        std::span<const SoftLabel> targets, const TrainOpts& opts) {
  if (inputs.size() != targets.size()) {
    throw DomainError("inputs and targets differ in length");
  }
  opts.Validate(inputs.size());
  model.Validate();
  BatchSampler sampler(inputs.size(), opts.batch_size, opts.seed, opts.shuffle);
  std::vector<Example> batch;
  for (std::size_t it = 0; it < opts.iterations; ++it) {
    batch.clear();
    for (std::size_t i : sampler.Next()) batch.push_back({inputs[i], targets[i].probs});
    SgdStep(model, batch, opts.learning_rate);
  }
  return model;
}

MlpClassifier Train(MlpClassifier model, const LabeledDataset& ds,
                    const TrainOpts& opts) {
  ds.Validate();
  if (ds.n_classes != model.n_classes()) {
    throw ConfigError("dataset class count does not match model output width");
  }
  std::vector<SoftLabel> targets;
  targets.reserve(ds.size());
  for (ClassId y : ds.labels) targets.push_back(SoftLabel::OneHot(y, ds.n_classes));
  return TrainSoft(std::move(model), ds.points, targets, opts);
}

double DatasetLoss(const MlpClassifier& model, const LabeledDataset& ds) {
  std::vector<SoftLabel> targets;
  std::vector<Example> batch;
  targets.reserve(ds.size());
  for (ClassId y : ds.labels) targets.push_back(SoftLabel::OneHot(y, ds.n_classes));
  batch.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) batch.push_back({ds.points[i], targets[i].probs});
  return CrossEntropy(model, batch);
}

double Accuracy(const MlpClassifier& model, const LabeledDataset& ds) {
  if (ds.size() == 0) throw DomainError("accuracy of empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (model.Predict(ds.points[i]) == ds.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.size());
}

void SaveModel(const MlpClassifier& model, const std::string& path) {
  WriteJsonFile(path, ModelToJson(model));
}

MlpClassifier LoadModel(const std::string& path) {
  return ModelFromJson(ReadJsonFile(path));
}

}  // namespace miabench
