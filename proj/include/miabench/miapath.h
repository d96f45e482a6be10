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
#ifndef MIABENCH_MIAPATH_H_
#define MIABENCH_MIAPATH_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "miabench/advattack.h"
#include "miabench/mlp.h"
#include "miabench/vec.h"

namespace miabench {

// gamma(t_k) = max softmax score of the model at x + t_k * epsilon on the
// uniform partition t_k = k / N.
struct AdversarialPath {
  std::vector<double> partition;
  std::vector<double> values;
  std::size_t n_intervals = 0;
};

AdversarialPath SamplePath(const MlpClassifier& model, std::span<const double> x,
                           std::span<const double> epsilon, std::size_t n_intervals);

// L_N = sum_k |values[k] - values[k-1]|. Needs at least two values.
double ArcLength(std::span<const double> values);

// Arc length of f sampled on the uniform partition of [0, 1] into N pieces.
double SampledArcLength(const std::function<double(double)>& f, std::size_t n_intervals);

inline constexpr std::size_t kOracleIntervals = std::size_t{1} << 16;

// Reference arc length from a very fine uniform partition.
double ExactArcLengthOracle(const MlpClassifier& model, std::span<const double> x,
                            std::span<const double> epsilon,
                            std::size_t n_fine = kOracleIntervals);

// Upper bound on L - L_N for a C^1 path with |J| strictly monotone pieces
// when the mesh does not exceed the shortest piece:
// sup|gamma'| * |J| * max_step.
double ArcLengthGapBound(double deriv_sup, double n_monotone_intervals, double max_step);

enum class MiaStrategy { kArcLength, kDistanceL1, kDistanceL2, kDistanceLinf, kCustom };

const char* MiaStrategyName(MiaStrategy s);
// Accepts both the internal names and the CLI spellings (sisyphos,
// dist-l1, dist-l2, dist-linf).
MiaStrategy ParseMiaStrategy(std::string_view name);

// phi(model, x, x_adv) for custom rules.
using MiaFunctional = std::function<double(const MlpClassifier&, std::span<const double>,
                                           std::span<const double>)>;

struct MiaRule {
  MiaStrategy strategy = MiaStrategy::kArcLength;
  double threshold = 0.0;
  MiaFunctional custom;
};

inline constexpr std::size_t kDefaultPathSamples = 30;

double MiaScore(const MiaRule& rule, const MlpClassifier& model,
                const AdversarialExample& adv, std::size_t n_intervals = kDefaultPathSamples);

// Membership flag: score >= threshold.
inline bool MiaDecide(double score, double threshold) { return score >= threshold; }

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct EvalReport {
  std::vector<RocPoint> roc;
  double auc = 0.5;
  // max over thresholds of (TPR + TNR) / 2
  double best_accuracy = 0.5;
  double best_threshold = 0.0;
  std::size_t n_members = 0;
  std::size_t n_nonmembers = 0;
};

// Sweeps the threshold over every distinct score (members are positives).
// The trapezoidal AUC counts tied member/non-member pairs as one half.
EvalReport EvaluateAttack(std::span<const double> member_scores,
                          std::span<const double> nonmember_scores);

}  // namespace miabench

#endif  // MIABENCH_MIAPATH_H_
