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
#include "miabench/miapath.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "miabench/errors.h"

namespace miabench {

AdversarialPath SamplePath(const MlpClassifier& model, std::span<const double> x,
                           std::span<const double> epsilon, std::size_t n_intervals) {
  if (n_intervals == 0) throw DomainError("path needs at least one interval");
  RequireSameDim(x, epsilon);
  AdversarialPath path;
  path.n_intervals = n_intervals;
  path.partition.resize(n_intervals + 1);
  path.values.resize(n_intervals + 1);
  for (std::size_t k = 0; k <= n_intervals; ++k) {
    const double t = k == n_intervals ? 1.0
                                      : static_cast<double>(k) / static_cast<double>(n_intervals);
    path.partition[k] = t;
    path.values[k] = k == 0 ? model.MaxScore(x) : model.MaxScore(Axpy(x, t, epsilon));
  }
  return path;
}

double ArcLength(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("arc length needs at least two samples");
  double total = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) total += std::abs(values[k] - values[k - 1]);
  return total;
}

double SampledArcLength(const std::function<double(double)>& f, std::size_t n_intervals) {
  if (n_intervals == 0) throw DomainError("path needs at least one interval");
  double total = 0.0;
  double prev = f(0.0);
  for (std::size_t k = 1; k <= n_intervals; ++k) {
    const double t = k == n_intervals ? 1.0
                                      : static_cast<double>(k) / static_cast<double>(n_intervals);
    const double cur = f(t);
    total += std::abs(cur - prev);
    prev = cur;
  }
  return total;
}

double ExactArcLengthOracle(const MlpClassifier& model, std::span<const double> x,
                            std::span<const double> epsilon, std::size_t n_fine) {
  return ArcLength(SamplePath(model, x, epsilon, n_fine).values);
}

double ArcLengthGapBound(double deriv_sup, double n_monotone_intervals, double max_step) {
  if (!(deriv_sup >= 0.0) || !(n_monotone_intervals >= 0.0) || !(max_step >= 0.0)) {
    throw DomainError("bound inputs must be non-negative");
  }
  return deriv_sup * n_monotone_intervals * max_step;
}

const char* MiaStrategyName(MiaStrategy s) {
  switch (s) {
    case MiaStrategy::kArcLength: return "arc_length";
    case MiaStrategy::kDistanceL1: return "distance_l1";
    case MiaStrategy::kDistanceL2: return "distance_l2";
    case MiaStrategy::kDistanceLinf: return "distance_linf";
    case MiaStrategy::kCustom: return "custom";
  }
  return "unknown";
}

MiaStrategy ParseMiaStrategy(std::string_view name) {
  if (name == "arc_length" || name == "sisyphos") return MiaStrategy::kArcLength;
  if (name == "distance_l1" || name == "dist-l1") return MiaStrategy::kDistanceL1;
  if (name == "distance_l2" || name == "dist-l2") return MiaStrategy::kDistanceL2;
  if (name == "distance_linf" || name == "dist-linf") return MiaStrategy::kDistanceLinf;
  if (name == "custom") return MiaStrategy::kCustom;
  throw ConfigError("unknown MIA strategy: " + std::string(name));
}

double MiaScore(const MiaRule& rule, const MlpClassifier& model,
                const AdversarialExample& adv, std::size_t n_intervals) {
  RequireSameDim(adv.x, adv.epsilon);
  switch (rule.strategy) {
    case MiaStrategy::kArcLength:
      return ArcLength(SamplePath(model, adv.x, adv.epsilon, n_intervals).values);
    case MiaStrategy::kDistanceL1: return NormL1(adv.epsilon);
    case MiaStrategy::kDistanceL2: return NormL2(adv.epsilon);
    case MiaStrategy::kDistanceLinf: return NormLinf(adv.epsilon);
    case MiaStrategy::kCustom:
      if (!rule.custom) throw ConfigError("custom MIA rule without a functional");
      return rule.custom(model, adv.x, adv.x_adv);
  }
  throw ConfigError("unknown MIA strategy");
}

EvalReport EvaluateAttack(std::span<const double> member_scores,
                          std::span<const double> nonmember_scores) {
  if (member_scores.empty() || nonmember_scores.empty()) {
    throw DomainError("evaluation needs members and non-members");
  }
  struct Scored {
    double score;
    bool member;
  };
  std::vector<Scored> all;
  all.reserve(member_scores.size() + nonmember_scores.size());
  for (double s : member_scores) all.push_back({s, true});
  for (double s : nonmember_scores) all.push_back({s, false});
  std::sort(all.begin(), all.end(),
            [](const Scored& a, const Scored& b) { return a.score > b.score; });

  EvalReport report;
  report.n_members = member_scores.size();
  report.n_nonmembers = nonmember_scores.size();
  const double pos = static_cast<double>(report.n_members);
  const double neg = static_cast<double>(report.n_nonmembers);

  report.roc.push_back({0.0, 0.0});
  report.best_accuracy = 0.5;
  report.best_threshold = std::numeric_limits<double>::infinity();
  std::size_t tp = 0;
  std::size_t fp = 0;
  double auc = 0.0;
  std::size_t k = 0;
  while (k < all.size()) {
    // Every score tied with all[k] joins at the same threshold.
    const double tau = all[k].score;
    while (k < all.size() && all[k].score == tau) {
      if (all[k].member) {
        ++tp;
      } else {
        ++fp;
      }
      ++k;
    }
    const RocPoint p{static_cast<double>(fp) / neg, static_cast<double>(tp) / pos};
    const RocPoint& q = report.roc.back();
    auc += (p.fpr - q.fpr) * (p.tpr + q.tpr) * 0.5;
    report.roc.push_back(p);
    const double acc = 0.5 * (p.tpr + 1.0 - p.fpr);
    if (acc > report.best_accuracy) {
      report.best_accuracy = acc;
      report.best_threshold = tau;
    }
  }
  report.auc = std::clamp(auc, 0.0, 1.0);
  return report;
}

}  // namespace miabench
