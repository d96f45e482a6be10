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
#ifndef MIABENCH_DEFENSE_H_
#define MIABENCH_DEFENSE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "miabench/mlp.h"
#include "miabench/stats.h"
#include "miabench/synthdata.h"

namespace miabench {

// Label-noise schedule M. Constant keeps zeta fixed; a linear ramp adds
// `rate` per epoch and stays strictly below (K - 1) / K.
struct Schedule {
  enum class Kind { kConstant, kLinearRamp };
  Kind kind = Kind::kConstant;
  double rate = 0.0;

  static Schedule Constant() { return {}; }
  static Schedule Ramp(double rate) { return {Kind::kLinearRamp, rate}; }
  // "constant" or "ramp:<rate>".
  static Schedule Parse(std::string_view text);
  std::string ToString() const;
};

struct DefenseConfig {
  double zeta = 0.0;
  Schedule schedule;
  // 1 gives deterministic smoothing of every label; below 1 each sample is
  // smoothed with this probability, re-drawn every epoch.
  double injection_prob = 1.0;
  TrainOpts train_opts;
  // Stop after this many consecutive epochs without a decrease of the
  // full-train loss. 0 disables early stopping.
  std::size_t patience = 0;

  // Throws ConfigError.
  void Validate(std::size_t n_classes) const;
};

// (1 - zeta) on y and zeta / (K - 1) elsewhere. zeta in [0, (K-1)/K].
SoftLabel SoftenLabel(ClassId y, std::size_t n_classes, double zeta);

double ApplySchedule(const Schedule& schedule, double zeta, std::size_t n_classes);

struct EpochRecord {
  std::size_t epoch = 0;
  // Last mini-batch loss of the epoch against the current targets.
  double batch_loss = 0.0;
  // Previous epoch's batch_loss.
  double previous_batch_loss = 0.0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  double zeta = 0.0;
};

struct DefenseResult {
  MlpClassifier model;
  std::vector<EpochRecord> history;
  bool stopped_early = false;
};

// Mini-batch SGD on label-smoothed targets. An epoch is ceil(n / m) steps;
// the first epoch uses one-hot targets, after every epoch targets are
// re-smoothed at the current zeta and zeta advances by the schedule.
// Batches come from the same sampler as Train, so zeta = 0 with
// injection_prob = 1 and no early stop reproduces Train bit for bit.
DefenseResult TrainWithLabelNoise(const LabeledDataset& ds, MlpClassifier model,
                                  const DefenseConfig& cfg,
                                  const LabeledDataset* validation = nullptr);

struct ExcessReport {
  std::vector<double> values;
  BoxplotSummary summary;
};

// Per train sample: its max score minus the mean max score on heldout.
ExcessReport ExcessConfidence(const MlpClassifier& model, const LabeledDataset& train,
                              const LabeledDataset& heldout);

}  // namespace miabench

#endif  // MIABENCH_DEFENSE_H_
