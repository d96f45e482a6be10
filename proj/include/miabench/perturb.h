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
#ifndef MIABENCH_PERTURB_H_
#define MIABENCH_PERTURB_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "miabench/rng.h"
#include "miabench/synthdata.h"
#include "miabench/vec.h"

namespace miabench {

enum class NoiseKind { kDirected, kIsotropic };

// How kappa * delta(y) is read: as the noise standard deviation, or as the
// diagonal of the covariance matrix (so the std is its square root).
enum class ScaleSemantics { kStdDev, kCovariance };

const char* NoiseKindName(NoiseKind kind);
NoiseKind ParseNoiseKind(std::string_view name);
const char* ScaleSemanticsName(ScaleSemantics s);
ScaleSemantics ParseScaleSemantics(std::string_view name);

// Directed noise defaults to std semantics, isotropic to covariance.
ScaleSemantics DefaultSemantics(NoiseKind kind);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kDirected;
  double kappa = 0.0;
  ScaleSemantics scale = ScaleSemantics::kStdDev;
  std::uint64_t seed = 0;

  static NoiseSpec Make(NoiseKind kind, double kappa, std::uint64_t seed);
  void Validate() const;
  // Standard deviation of the scalar/per-axis noise for a class whose
  // intra-cluster distance is delta.
  double StdDev(double delta) const;
};

// Unit vector from x toward the nearest barycenter labeled differently
// from y. Throws DomainError when x sits on that barycenter.
Vec DirectionToOpposing(std::span<const double> x, ClassId y, const ClassStats& stats);

// x + magnitude * u, u as in DirectionToOpposing.
Vec DirectedDisplace(std::span<const double> x, ClassId y, const ClassStats& stats,
                     double magnitude);

// x + |eps| u with eps ~ N(0, s^2), s = spec.StdDev(delta(y)).
Vec DirectedPerturb(std::span<const double> x, ClassId y, const ClassStats& stats,
                    const NoiseSpec& spec, Rng& rng);

// x + eps with eps ~ N(0, s^2 I), s = spec.StdDev(delta(y)).
Vec IsotropicPerturb(std::span<const double> x, ClassId y, const ClassStats& stats,
                     const NoiseSpec& spec, Rng& rng);

// Noisy copy of a dataset. `base` is non-owning and must outlive this.
struct PerturbedDataset {
  const LabeledDataset* base = nullptr;
  std::vector<Vec> points;
  NoiseSpec spec;

  // Labels and split of base with the perturbed points.
  LabeledDataset AsDataset() const;
};

// Sample i draws from its own stream seeded by (spec.seed, i), so the
// result is independent of evaluation order.
PerturbedDataset PerturbDataset(const LabeledDataset& ds, const ClassStats& stats,
                                const NoiseSpec& spec);

// Evenly spaced grid of `count` values in [lo, hi].
std::vector<double> LinearGrid(double lo, double hi, std::size_t count);

}  // namespace miabench

#endif  // MIABENCH_PERTURB_H_
