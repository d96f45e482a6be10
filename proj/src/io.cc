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
#include "miabench/io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "miabench/errors.h"

namespace miabench {

namespace {

template <typename T>
T Get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field: ") + key);
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field ") + key + ": " + e.what());
  }
}

template <typename T>
T GetOr(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return Get<T>(j, key);
}

}  // namespace

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

void WriteJsonFile(const std::string& path, const Json& j) {
  WriteTextFile(path, j.dump(1) + "\n");
}

std::string FormatDouble(double v) { return Json(v).dump(); }

Json DatasetToJson(const LabeledDataset& ds) {
  Json j;
  j["dim"] = ds.dim;
  j["n_classes"] = ds.n_classes;
  j["split"] = SplitName(ds.split);
  j["points"] = ds.points;
  j["labels"] = ds.labels;
  return j;
}

LabeledDataset DatasetFromJson(const Json& j) {
  LabeledDataset ds;
  ds.dim = Get<std::size_t>(j, "dim");
  ds.n_classes = Get<std::size_t>(j, "n_classes");
  ds.split = ParseSplit(Get<std::string>(j, "split"));
  ds.points = Get<std::vector<Vec>>(j, "points");
  ds.labels = Get<std::vector<ClassId>>(j, "labels");
  ds.Validate();
  return ds;
}

Json ModelToJson(const MlpClassifier& model) {
  Json j;
  j["layer_sizes"] = model.layer_sizes();
  j["activation"] = ActivationName(model.activation());
  Json weights = Json::array();
  Json biases = Json::array();
  for (const DenseLayer& layer : model.layers()) {
    weights.push_back(layer.weights);
    biases.push_back(layer.bias);
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j;
}

MlpClassifier ModelFromJson(const Json& j) {
  const auto sizes = Get<std::vector<std::size_t>>(j, "layer_sizes");
  const auto weights = Get<std::vector<std::vector<double>>>(j, "weights");
  const auto biases = Get<std::vector<std::vector<double>>>(j, "biases");
  const Activation act = ParseActivation(Get<std::string>(j, "activation"));
  if (sizes.size() < 2) throw ValidationError("layer_sizes needs at least two widths");
  if (weights.size() + 1 != sizes.size() || biases.size() + 1 != sizes.size()) {
    throw ValidationError("weights/biases count does not match layer_sizes");
  }
  MlpClassifier model;
  try {
    model = MlpClassifier(sizes, act);
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  for (std::size_t l = 0; l < weights.size(); ++l) {
    DenseLayer& layer = model.layers()[l];
    if (weights[l].size() != layer.weights.size() || biases[l].size() != layer.bias.size()) {
      throw ValidationError("layer " + std::to_string(l) + " has the wrong shape");
    }
    layer.weights = weights[l];
    layer.bias = biases[l];
  }
  model.Validate();
  return model;
}

Json ClassStatsToJson(const ClassStats& stats) {
  Json j;
  j["variant"] = stats.variant == DistanceVariant::kPairwiseMean ? "pairwise_mean"
                                                                 : "squared_draft";
  j["barycenters"] = stats.barycenters;
  j["intra_distance"] = stats.intra_distance;
  j["counts"] = stats.counts;
  return j;
}

ClassStats ClassStatsFromJson(const Json& j) {
  ClassStats s;
  const auto variant = GetOr<std::string>(j, "variant", "pairwise_mean");
  if (variant == "pairwise_mean") {
    s.variant = DistanceVariant::kPairwiseMean;
  } else if (variant == "squared_draft") {
    s.variant = DistanceVariant::kSquaredDraft;
  } else {
    throw ParseError("unknown distance variant: " + variant);
  }
  s.barycenters = Get<std::vector<Vec>>(j, "barycenters");
  s.intra_distance = Get<std::vector<double>>(j, "intra_distance");
  s.counts = Get<std::vector<std::size_t>>(j, "counts");
  if (s.barycenters.size() != s.intra_distance.size() ||
      s.barycenters.size() != s.counts.size()) {
    throw ValidationError("class statistics arrays differ in length");
  }
  return s;
}

Json NoiseSpecToJson(const NoiseSpec& spec) {
  Json j;
  j["kind"] = NoiseKindName(spec.kind);
  j["kappa"] = spec.kappa;
  j["scale_semantics"] = ScaleSemanticsName(spec.scale);
  j["seed"] = spec.seed;
  return j;
}

NoiseSpec NoiseSpecFromJson(const Json& j) {
  NoiseSpec spec;
  spec.kind = ParseNoiseKind(Get<std::string>(j, "kind"));
  spec.kappa = Get<double>(j, "kappa");
  spec.scale = j.contains("scale_semantics")
                   ? ParseScaleSemantics(Get<std::string>(j, "scale_semantics"))
                   : DefaultSemantics(spec.kind);
  spec.seed = GetOr<std::uint64_t>(j, "seed", 0);
  spec.Validate();
  return spec;
}

Json PerturbedDatasetToJson(const PerturbedDataset& pd) {
  Json j = DatasetToJson(pd.AsDataset());
  j["spec"] = NoiseSpecToJson(pd.spec);
  return j;
}

Json AdversarialExampleToJson(const AdversarialExample& adv) {
  Json j;
  j["x"] = adv.x;
  j["x_adv"] = adv.x_adv;
  j["epsilon"] = adv.epsilon;
  j["y_orig"] = adv.y_orig;
  j["y_adv"] = adv.y_adv;
  j["eps_norm_l2"] = adv.eps_norm_l2;
  j["iterations_used"] = adv.iterations_used;
  return j;
}

AdversarialExample AdversarialExampleFromJson(const Json& j) {
  AdversarialExample adv;
  adv.x = Get<Vec>(j, "x");
  adv.x_adv = Get<Vec>(j, "x_adv");
  adv.epsilon = Get<Vec>(j, "epsilon");
  adv.y_orig = Get<ClassId>(j, "y_orig");
  adv.y_adv = Get<ClassId>(j, "y_adv");
  adv.eps_norm_l2 = Get<double>(j, "eps_norm_l2");
  adv.iterations_used = Get<std::size_t>(j, "iterations_used");
  if (adv.x.size() != adv.x_adv.size() || adv.x.size() != adv.epsilon.size()) {
    throw ValidationError("adversarial example vectors differ in length");
  }
  return adv;
}

Json KsResultToJson(const KsResult& r) {
  Json j;
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["method"] = KsMethodName(r.method);
  return j;
}

Json BoxplotToJson(const BoxplotSummary& b) {
  Json j;
  j["min"] = b.min;
  j["q1"] = b.q1;
  j["median"] = b.median;
  j["q3"] = b.q3;
  j["max"] = b.max;
  j["outliers"] = b.outliers;
  return j;
}

Json EvalReportToJson(const EvalReport& r) {
  Json j;
  j["auc"] = r.auc;
  j["best_accuracy"] = r.best_accuracy;
  j["best_threshold"] = std::isfinite(r.best_threshold) ? Json(r.best_threshold) : Json(nullptr);
  j["n_members"] = r.n_members;
  j["n_nonmembers"] = r.n_nonmembers;
  Json roc = Json::array();
  for (const RocPoint& p : r.roc) roc.push_back({p.fpr, p.tpr});
  j["roc"] = std::move(roc);
  return j;
}

Json EpochRecordToJson(const EpochRecord& r) {
  Json j;
  j["epoch"] = r.epoch;
  j["train_loss"] = r.train_loss;
  j["val_loss"] = r.val_loss;
  j["val_accuracy"] = r.val_accuracy;
  j["zeta"] = r.zeta;
  j["batch_loss"] = r.batch_loss;
  j["previous_batch_loss"] = r.previous_batch_loss;
  return j;
}

Json ExcessReportToJson(const ExcessReport& r) {
  Json j;
  j["values"] = r.values;
  j["summary"] = BoxplotToJson(r.summary);
  return j;
}

Json GenConfigToJson(const GenConfig& cfg) {
  Json j;
  j["n_samples"] = cfg.n_samples;
  j["n_test"] = cfg.n_test;
  j["n_classes"] = cfg.n_classes;
  j["dim"] = cfg.dim;
  j["clusters_per_class"] = cfg.clusters_per_class;
  j["class_separation"] = cfg.class_separation;
  j["cluster_std"] = cfg.cluster_std;
  j["seed"] = cfg.seed;
  return j;
}

GenConfig GenConfigFromJson(const Json& j) {
  GenConfig cfg;
  cfg.n_samples = GetOr(j, "n_samples", cfg.n_samples);
  cfg.n_test = GetOr(j, "n_test", cfg.n_test);
  cfg.n_classes = GetOr(j, "n_classes", cfg.n_classes);
  cfg.dim = GetOr(j, "dim", cfg.dim);
  cfg.clusters_per_class = GetOr(j, "clusters_per_class", cfg.clusters_per_class);
  cfg.class_separation = GetOr(j, "class_separation", cfg.class_separation);
  cfg.cluster_std = GetOr(j, "cluster_std", cfg.cluster_std);
  cfg.seed = GetOr(j, "seed", cfg.seed);
  return cfg;
}

Json TrainOptsToJson(const TrainOpts& opts) {
  Json j;
  j["iterations"] = opts.iterations;
  j["batch_size"] = opts.batch_size;
  j["learning_rate"] = opts.learning_rate;
  j["seed"] = opts.seed;
  j["shuffle"] = opts.shuffle;
  return j;
}

TrainOpts TrainOptsFromJson(const Json& j) {
  TrainOpts opts;
  opts.iterations = GetOr(j, "iterations", opts.iterations);
  opts.batch_size = GetOr(j, "batch_size", opts.batch_size);
  opts.learning_rate = GetOr(j, "learning_rate", opts.learning_rate);
  opts.seed = GetOr(j, "seed", opts.seed);
  opts.shuffle = GetOr(j, "shuffle", opts.shuffle);
  return opts;
}

Json AttackOptsToJson(const AttackOpts& opts) {
  Json j;
  j["max_iters"] = opts.max_iters;
  j["step_scale"] = opts.step_scale;
  j["bisect_tol"] = opts.bisect_tol;
  j["overshoot"] = opts.overshoot;
  return j;
}

AttackOpts AttackOptsFromJson(const Json& j) {
  AttackOpts opts;
  opts.max_iters = GetOr(j, "max_iters", opts.max_iters);
  opts.step_scale = GetOr(j, "step_scale", opts.step_scale);
  opts.bisect_tol = GetOr(j, "bisect_tol", opts.bisect_tol);
  opts.overshoot = GetOr(j, "overshoot", opts.overshoot);
  return opts;
}

}  // namespace miabench
