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
#ifndef MIABENCH_HARNESS_H_
#define MIABENCH_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "miabench/advattack.h"
#include "miabench/defense.h"
#include "miabench/io.h"
#include "miabench/miapath.h"
#include "miabench/mlp.h"
#include "miabench/perturb.h"
#include "miabench/stats.h"
#include "miabench/synthdata.h"

namespace miabench {

struct ModelSpec {
  std::vector<std::size_t> hidden = {10, 10};
  Activation activation = Activation::kRelu;
  TrainOpts train;
};

struct NoiseGrid {
  NoiseKind kind = NoiseKind::kDirected;
  // Overrides the kind's default scale semantics when set.
  std::optional<ScaleSemantics> scale;
  std::vector<double> kappas = LinearGrid(0.0, 0.25, 11);
};

struct MiaSpec {
  std::vector<MiaStrategy> strategies = {MiaStrategy::kArcLength, MiaStrategy::kDistanceL1,
                                         MiaStrategy::kDistanceL2, MiaStrategy::kDistanceLinf};
  std::size_t path_samples = kDefaultPathSamples;
  AttackOpts attack;
  HeuristicOpts heuristic;
  // Members and non-members drawn per side (capped by the split sizes).
  std::size_t pool_size = 1000;
  // Null calibration: randomly permute membership flags before scoring.
  bool shuffle_membership = false;
};

struct DefenseSpec {
  std::vector<double> zetas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  Schedule schedule;
  double injection_prob = 1.0;
  std::size_t patience = 0;
  bool run_mia = false;
};

struct ExperimentConfig {
  GenConfig gen;
  ModelSpec model;
  NoiseGrid noise;
  std::size_t repeats = 50;
  BivariateOpts bivariate;
  MiaSpec mia;
  DefenseSpec defense;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::size_t threads = 1;

  // Throws ConfigError.
  void Validate() const;
};

// Synthetic confidence-peak study: n = 2000, K = 4, d = 2, MLP 10-10,
// 5000 iterations, 50 repeats, directed noise on an 11-point kappa grid.
ExperimentConfig MotivationDefaults();
// Deliberately overfit setting for membership inference.
ExperimentConfig MiaDefaults();
// Label-noise defense: K = 10, one hidden layer of 100 units.
ExperimentConfig DefenseDefaults();

Json ExperimentConfigToJson(const ExperimentConfig& cfg);
// Fields absent from j keep their value in `base`.
ExperimentConfig ExperimentConfigFromJson(const Json& j, const ExperimentConfig& base);

// Draws data and trains the configured model for outer repeat r.
struct TrainedSetup {
  DatasetPair data;
  MlpClassifier model;
};
TrainedSetup PrepareRepeat(const ExperimentConfig& cfg, std::size_t repeat);

enum class PairKind { kTrain, kTest };
enum class TestKind { kScoreUnivariate, kInputBivariate };
const char* PairName(PairKind p);
const char* TestName(TestKind t);

struct MotivationCell {
  double kappa = 0.0;
  PairKind pair = PairKind::kTrain;
  TestKind test = TestKind::kScoreUnivariate;
  // One class-averaged p-value per repeat.
  std::vector<double> p_values;
  BoxplotSummary summary;
};

struct MotivationReport {
  std::vector<MotivationCell> cells;  // ordered by kappa, pair, test
  std::vector<double> train_accuracy;  // per repeat
  std::vector<double> test_accuracy;

  const MotivationCell& Cell(std::size_t kappa_index, PairKind pair, TestKind test) const;
};

MotivationReport RunMotivation(const ExperimentConfig& cfg);

struct MiaSampleScore {
  std::size_t sample_id = 0;  // index into the pool
  bool member = false;
  bool fooled = false;
  std::vector<double> scores;  // parallel to MiaReport::strategies
};

struct MiaReport {
  std::vector<MiaStrategy> strategies;
  std::vector<EvalReport> reports;  // parallel to strategies
  std::vector<MiaSampleScore> samples;
  std::size_t n_not_fooled = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;

  const EvalReport& For(MiaStrategy s) const;
};

// Attacks a balanced member/non-member pool drawn from `train` and `test`
// and scores it under every configured strategy. Samples the attack cannot
// fool are scored with a zero perturbation.
MiaReport RunMiaOnModel(const MlpClassifier& model, const LabeledDataset& train,
                        const LabeledDataset& test, const ExperimentConfig& cfg);

// Generates data and trains the model for repeat 0, then RunMiaOnModel.
MiaReport RunMiaComparison(const ExperimentConfig& cfg);

struct DefenseCell {
  double zeta = 0.0;
  MlpClassifier model;
  std::vector<EpochRecord> history;
  bool stopped_early = false;
  ExcessReport excess;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  std::optional<MiaReport> mia;
};

struct DefenseSweepReport {
  std::vector<DefenseCell> cells;  // parallel to cfg.defense.zetas
};

DefenseSweepReport RunDefenseSweep(const ExperimentConfig& cfg);

struct MinimalityCurve {
  std::size_t n_intervals = 0;
  // ratio[k] = fraction of samples whose prediction at x + (k/N) eps
  // matches the prediction at x.
  std::vector<double> minimal_ratio;
  std::vector<double> heuristic_ratio;
  double minimal_success_rate = 0.0;
  double heuristic_success_rate = 0.0;
  // Over samples both attacks fooled.
  double minimal_median_norm = 0.0;
  double heuristic_median_norm = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_both_fooled = 0;
};

// Partial-noise accuracy of samples pushed by k/N of their adversarial
// perturbation, for the minimal attack and the directed heuristic.
MinimalityCurve RunMinimalityCurve(const ExperimentConfig& cfg);

// Report files. Every writer creates out_dir if needed and returns the
// paths it wrote.
std::vector<std::string> WriteMotivation(const MotivationReport& report,
                                         const ExperimentConfig& cfg);
std::vector<std::string> WriteMia(const MiaReport& report, const ExperimentConfig& cfg,
                                  const std::string& json_path,
                                  const std::string& csv_path);
std::vector<std::string> WriteDefense(const DefenseSweepReport& report,
                                      const ExperimentConfig& cfg);
std::vector<std::string> WriteMinimality(const MinimalityCurve& curve,
                                         const ExperimentConfig& cfg);

Json MiaReportToJson(const MiaReport& report);
std::string MiaScoresCsv(const MiaReport& report);

}  // namespace miabench

#endif  // MIABENCH_HARNESS_H_
