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
#ifndef MIABENCH_ADVATTACK_H_
#define MIABENCH_ADVATTACK_H_

#include <cstddef>
#include <span>

#include "miabench/errors.h"
#include "miabench/mlp.h"
#include "miabench/synthdata.h"
#include "miabench/vec.h"

namespace miabench {

struct AdversarialExample {
  Vec x;
  Vec x_adv;
  Vec epsilon;  // x_adv == x + epsilon, elementwise and exactly
  ClassId y_orig = 0;
  ClassId y_adv = 0;
  double eps_norm_l2 = 0.0;
  std::size_t iterations_used = 0;
};

struct AttackOpts {
  std::size_t max_iters = 100;
  // Multiplier on each linearized step toward the closest boundary.
  double step_scale = 1.0;
  double bisect_tol = 1e-5;
  // Extra relative push past the linearized boundary before bisecting back.
  double overshoot = 0.02;

  void Validate() const;
};

// The search never changed the predicted class. best() holds the last
// iterate (its label equals y_orig).
class NotFooled : public Error {
 public:
  NotFooled(const std::string& what, AdversarialExample best)
      : Error(what), best_(std::move(best)) {}
  const AdversarialExample& best() const { return best_; }

 private:
  AdversarialExample best_;
};

// Untargeted minimal-L2 search: repeatedly linearize the logit margins
// between the predicted class and every other class, step onto the closest
// linearized boundary, and once the prediction flips bisect back along the
// segment from x. Throws NotFooled after max_iters without a flip.
AdversarialExample FindAdversarial(const MlpClassifier& model,
                                   std::span<const double> x,
                                   const AttackOpts& opts);

// Point p on [x_in, x_out] with a prediction different from x_in's and
// within tol of a segment point predicted like x_in. Throws DomainError if
// x_in and x_out share a prediction.
Vec BisectBoundary(const MlpClassifier& model, std::span<const double> x_in,
                   std::span<const double> x_out, double tol);

// Fraction t in (0, 1] such that x_in + t (x_out - x_in) is the point
// BisectBoundary returns.
double BisectFraction(const MlpClassifier& model, std::span<const double> x_in,
                      std::span<const double> x_out, double tol);

struct HeuristicOpts {
  // Step length as a fraction of the intra-cluster distance of the
  // predicted class.
  double step_fraction = 0.025;
  std::size_t max_steps = 2000;
};

// The barycenter-directed comparison attack: walk from x toward the nearest
// barycenter of a class other than the predicted one in fixed steps and
// stop at the first step whose prediction differs. No refinement, so the
// result overshoots the boundary by up to one step. Throws NotFooled.
AdversarialExample DirectedHeuristicAttack(const MlpClassifier& model,
                                           std::span<const double> x,
                                           const ClassStats& stats,
                                           const HeuristicOpts& opts = {});

}  // namespace miabench

#endif  // MIABENCH_ADVATTACK_H_
