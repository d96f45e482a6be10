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
#include "miabench/advattack.h"

#include <cmath>
#include <limits>
#include <string>

#include "miabench/perturb.h"

namespace miabench {

void AttackOpts::Validate() const {
  if (max_iters == 0) throw ConfigError("max_iters must be positive");
  if (!(step_scale > 0.0)) throw ConfigError("step_scale must be positive");
  if (!(bisect_tol > 0.0)) throw ConfigError("bisect_tol must be positive");
  if (!(overshoot >= 0.0)) throw ConfigError("overshoot must be non-negative");
}

double BisectFraction(const MlpClassifier& model, std::span<const double> x_in,
                      std::span<const double> x_out, double tol) {
  if (!(tol > 0.0)) throw ConfigError("bisection tolerance must be positive");
  const ClassId y_in = model.Predict(x_in);
  if (model.Predict(x_out) == y_in) {
    throw DomainError("bisection endpoints share a prediction");
  }
  const Vec dir = Sub(x_out, x_in);
  const double length = NormL2(dir);
  double lo = 0.0;
  double hi = 1.0;
  while ((hi - lo) * length > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (model.Predict(Axpy(x_in, mid, dir)) == y_in) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

Vec BisectBoundary(const MlpClassifier& model, std::span<const double> x_in,
                   std::span<const double> x_out, double tol) {
  const double t = BisectFraction(model, x_in, x_out, tol);
  if (t == 1.0) return Vec(x_out.begin(), x_out.end());
  return Axpy(x_in, t, Sub(x_out, x_in));
}

namespace {

AdversarialExample MakeExample(const MlpClassifier& model, std::span<const double> x,
                               Vec epsilon, ClassId y_orig, std::size_t iters) {
  AdversarialExample adv;
  adv.x.assign(x.begin(), x.end());
  adv.epsilon = std::move(epsilon);
  adv.x_adv.resize(adv.x.size());
  for (std::size_t i = 0; i < adv.x.size(); ++i) adv.x_adv[i] = adv.x[i] + adv.epsilon[i];
  adv.y_orig = y_orig;
  adv.y_adv = model.Predict(adv.x_adv);
  adv.eps_norm_l2 = NormL2(adv.epsilon);
  adv.iterations_used = iters;
  return adv;
}

// Shrinks a fooling perturbation toward x along its own direction.
AdversarialExample Refine(const MlpClassifier& model, std::span<const double> x,
                          const Vec& fooling_eps, ClassId y_orig, std::size_t iters,
                          double tol) {
  const Vec x_out = Axpy(x, 1.0, fooling_eps);
  const double t = BisectFraction(model, x, x_out, tol);
  Vec eps(fooling_eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = t * fooling_eps[i];
  AdversarialExample adv = MakeExample(model, x, std::move(eps), y_orig, iters);
  // Rounding in x + eps can in principle land back on the original side.
  if (adv.y_adv == y_orig) adv = MakeExample(model, x, fooling_eps, y_orig, iters);
  return adv;
}

}  // namespace

AdversarialExample FindAdversarial(const MlpClassifier& model,
                                   std::span<const double> x,
                                   const AttackOpts& opts) {
  opts.Validate();
  const std::size_t d = model.input_dim();
  const std::size_t k_classes = model.n_classes();
  const ClassId y0 = model.Predict(x);

  Vec total(d, 0.0);
  Vec current(x.begin(), x.end());
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    const LogitJacobian lj = InputJacobian(model, current);
    // Closest linearized boundary among the competing classes.
    double best_dist = std::numeric_limits<double>::infinity();
    Vec best_step;
    for (std::size_t k = 0; k < k_classes; ++k) {
      if (k == y0) continue;
      Vec w(d);
      for (std::size_t j = 0; j < d; ++j) {
        w[j] = lj.jacobian[k * d + j] - lj.jacobian[y0 * d + j];
      }
      const double w_norm = NormL2(w);
      if (!(w_norm > 0.0)) continue;
      const double gap = std::abs(lj.logits[k] - lj.logits[y0]);
      const double dist = gap / w_norm;
      if (dist < best_dist) {
        best_dist = dist;
        // Small additive term so a zero gap still moves.
        const double scale = opts.step_scale * (gap + 1e-6) / (w_norm * w_norm);
        best_step.resize(d);
        for (std::size_t j = 0; j < d; ++j) best_step[j] = scale * w[j];
      }
    }
    if (!best_step.empty()) {
      for (std::size_t j = 0; j < d; ++j) total[j] += best_step[j];
    }
    Vec candidate(d);
    for (std::size_t j = 0; j < d; ++j) candidate[j] = (1.0 + opts.overshoot) * total[j];
    current = Axpy(x, 1.0, candidate);
    if (model.Predict(current) != y0) {
      return Refine(model, x, candidate, y0, it, opts.bisect_tol);
    }
  }
  AdversarialExample best = MakeExample(model, x, Sub(current, x), y0, opts.max_iters);
  throw NotFooled("no class change within " + std::to_string(opts.max_iters) +
                      " iterations",
                  std::move(best));
}

AdversarialExample DirectedHeuristicAttack(const MlpClassifier& model,
                                           std::span<const double> x,
                                           const ClassStats& stats,
                                           const HeuristicOpts& opts) {
  if (!(opts.step_fraction > 0.0)) throw ConfigError("step_fraction must be positive");
  const ClassId y0 = model.Predict(x);
  if (y0 >= stats.n_classes()) throw DomainError("prediction outside class statistics");
  const Vec u = DirectionToOpposing(x, y0, stats);
  double step = opts.step_fraction * stats.intra_distance[y0];
  if (!(step > 0.0)) step = opts.step_fraction;
  Vec eps(x.size(), 0.0);
  for (std::size_t s = 1; s <= opts.max_steps; ++s) {
    const double magnitude = step * static_cast<double>(s);
    for (std::size_t j = 0; j < eps.size(); ++j) eps[j] = magnitude * u[j];
    AdversarialExample adv = MakeExample(model, x, eps, y0, s);
    if (adv.y_adv != y0) return adv;
  }
  throw NotFooled("directed walk did not change the class",
                  MakeExample(model, x, eps, y0, opts.max_steps));
}

}  // namespace miabench
