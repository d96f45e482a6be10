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
#include "miabench/defense.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "miabench/errors.h"
#include "miabench/rng.h"

namespace miabench {

namespace {

double MaxZeta(std::size_t n_classes) {
  const double k = static_cast<double>(n_classes);
  return (k - 1.0) / k;
}

}  // namespace

Schedule Schedule::Parse(std::string_view text) {
  if (text == "constant") return Constant();
  constexpr std::string_view kRamp = "ramp:";
  if (text.substr(0, kRamp.size()) == kRamp) {
    const std::string rate_text(text.substr(kRamp.size()));
    std::size_t used = 0;
    double rate = 0.0;
    try {
      rate = std::stod(rate_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rate_text.size() || !(rate >= 0.0)) {
      throw ConfigError("bad ramp rate in schedule: " + std::string(text));
    }
    return Ramp(rate);
  }
  throw ConfigError("unknown schedule: " + std::string(text));
}

std::string Schedule::ToString() const {
  if (kind == Kind::kConstant) return "constant";
  std::ostringstream out;
  out << "ramp:" << rate;
  return out.str();
}

void DefenseConfig::Validate(std::size_t n_classes) const {
  if (n_classes < 2) throw ConfigError("defense needs at least 2 classes");
  if (!(zeta >= 0.0) || !(zeta < MaxZeta(n_classes))) {
    throw ConfigError("zeta must lie in [0, (K-1)/K)");
  }
  if (!(injection_prob > 0.0) || !(injection_prob <= 1.0)) {
    throw ConfigError("injection probability must lie in (0, 1]");
  }
  if (schedule.kind == Schedule::Kind::kLinearRamp && !(schedule.rate >= 0.0)) {
    throw ConfigError("ramp rate must be non-negative");
  }
}

SoftLabel SoftenLabel(ClassId y, std::size_t n_classes, double zeta) {
  if (n_classes < 2) throw ConfigError("soft labels need at least 2 classes");
  if (y >= n_classes) throw DomainError("label out of range");
  if (!(zeta >= 0.0) || !(zeta <= MaxZeta(n_classes))) {
    throw ConfigError("zeta must lie in [0, (K-1)/K]");
  }
  const double k = static_cast<double>(n_classes);
  const double off = zeta / (k - 1.0);
  const double keep = 1.0 - (k / (k - 1.0)) * zeta;
  SoftLabel s;
  s.probs.assign(n_classes, off);
  s.probs[y] = keep + off;
  return s;
}

double ApplySchedule(const Schedule& schedule, double zeta, std::size_t n_classes) {
  if (schedule.kind == Schedule::Kind::kConstant) return zeta;
  return std::min(zeta + schedule.rate, MaxZeta(n_classes) - 1e-9);
}

DefenseResult TrainWithLabelNoise(const LabeledDataset& ds, MlpClassifier model,
                                  const DefenseConfig& cfg,
                                  const LabeledDataset* validation) {
  ds.Validate();
  cfg.Validate(ds.n_classes);
  const TrainOpts& opts = cfg.train_opts;
  opts.Validate(ds.size());
  model.Validate();
  if (model.n_classes() != ds.n_classes) {
    throw ConfigError("dataset class count does not match model output width");
  }

  const std::size_t n = ds.size();
  const std::size_t steps_per_epoch = (n + opts.batch_size - 1) / opts.batch_size;
  std::vector<SoftLabel> targets(n);

  BatchSampler sampler(n, opts.batch_size, opts.seed, opts.shuffle);
  Rng gate_rng(DeriveSeed(opts.seed, Stage::kLabelGate));
  std::bernoulli_distribution gate(cfg.injection_prob);

  DefenseResult result;
  double zeta = cfg.zeta;
  double prev_batch_loss = 0.0;
  double batch_loss = 0.0;
  double best_train_loss = 0.0;
  std::size_t stale_epochs = 0;
  std::vector<Example> batch;
  std::size_t step = 0;
  std::size_t epoch = 0;
  while (step < opts.iterations) {
    // Targets for this epoch: gated samples get the current soft label.
    for (std::size_t i = 0; i < n; ++i) {
      const bool inject = cfg.injection_prob >= 1.0 || gate(gate_rng);
      targets[i] = inject ? SoftenLabel(ds.labels[i], ds.n_classes, zeta)
                          : SoftLabel::OneHot(ds.labels[i], ds.n_classes);
    }
    const std::size_t end = std::min(opts.iterations, step + steps_per_epoch);
    for (; step < end; ++step) {
      batch.clear();
      for (std::size_t i : sampler.Next()) batch.push_back({ds.points[i], targets[i].probs});
      prev_batch_loss = batch_loss;
      batch_loss = CrossEntropy(model, batch);
      SgdStep(model, batch, opts.learning_rate);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.batch_loss = batch_loss;
    rec.previous_batch_loss = prev_batch_loss;
    rec.train_loss = DatasetLoss(model, ds);
    rec.zeta = zeta;
    if (validation != nullptr && validation->size() > 0) {
      rec.val_loss = DatasetLoss(model, *validation);
      rec.val_accuracy = Accuracy(model, *validation);
    }
    result.history.push_back(rec);

    zeta = ApplySchedule(cfg.schedule, zeta, ds.n_classes);

    if (cfg.patience > 0) {
      if (epoch == 0 || rec.train_loss < best_train_loss) {
        best_train_loss = rec.train_loss;
        stale_epochs = 0;
      } else if (++stale_epochs >= cfg.patience) {
        result.stopped_early = true;
        break;
      }
    }
    ++epoch;
  }
  result.model = std::move(model);
  return result;
}

ExcessReport ExcessConfidence(const MlpClassifier& model, const LabeledDataset& train,
                              const LabeledDataset& heldout) {
  if (train.size() == 0) throw DomainError("excess confidence needs train samples");
  if (heldout.size() == 0) throw DomainError("excess confidence needs heldout samples");
  double heldout_mean = 0.0;
  for (const Vec& x : heldout.points) heldout_mean += model.MaxScore(x);
  heldout_mean /= static_cast<double>(heldout.size());
  ExcessReport report;
  report.values.reserve(train.size());
  for (const Vec& x : train.points) report.values.push_back(model.MaxScore(x) - heldout_mean);
  report.summary = SummarizeBoxplot(report.values);
  return report;
}

}  // namespace miabench
