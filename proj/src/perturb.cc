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
#include "miabench/perturb.h"

#include <cmath>
#include <string>

#include "miabench/errors.h"

namespace miabench {

const char* NoiseKindName(NoiseKind kind) {
  return kind == NoiseKind::kDirected ? "directed" : "isotropic";
}

NoiseKind ParseNoiseKind(std::string_view name) {
  if (name == "directed") return NoiseKind::kDirected;
  if (name == "isotropic") return NoiseKind::kIsotropic;
  throw ConfigError("unknown noise kind: " + std::string(name));
}

const char* ScaleSemanticsName(ScaleSemantics s) {
  return s == ScaleSemantics::kStdDev ? "std" : "covariance";
}

ScaleSemantics ParseScaleSemantics(std::string_view name) {
  if (name == "std") return ScaleSemantics::kStdDev;
  if (name == "covariance") return ScaleSemantics::kCovariance;
  throw ConfigError("unknown scale semantics: " + std::string(name));
}

ScaleSemantics DefaultSemantics(NoiseKind kind) {
  return kind == NoiseKind::kDirected ? ScaleSemantics::kStdDev
                                      : ScaleSemantics::kCovariance;
}

NoiseSpec NoiseSpec::Make(NoiseKind kind, double kappa, std::uint64_t seed) {
  NoiseSpec spec{kind, kappa, DefaultSemantics(kind), seed};
  spec.Validate();
  return spec;
}

void NoiseSpec::Validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw ConfigError("noise level kappa must be finite and >= 0");
  }
}

double NoiseSpec::StdDev(double delta) const {
  const double scale = kappa * delta;
  return this->scale == ScaleSemantics::kCovariance ? std::sqrt(scale) : scale;
}

Vec DirectionToOpposing(std::span<const double> x, ClassId y,
                        const ClassStats& stats) {
  const OpposingBarycenter target = NearestOpposingBarycenter(stats, x, y);
  Vec u = Sub(target.center, x);
  const double norm = NormL2(u);
  if (!(norm > 0.0)) {
    throw DomainError("sample coincides with the opposing barycenter; direction undefined");
  }
  for (double& v : u) v /= norm;
  return u;
}

Vec DirectedDisplace(std::span<const double> x, ClassId y, const ClassStats& stats,
                     double magnitude) {
  return Axpy(x, magnitude, DirectionToOpposing(x, y, stats));
}

Vec DirectedPerturb(std::span<const double> x, ClassId y, const ClassStats& stats,
                    const NoiseSpec& spec, Rng& rng) {
  if (spec.kind != NoiseKind::kDirected) throw ConfigError("spec is not directed");
  if (y >= stats.n_classes()) throw DomainError("label out of range");
  const Vec u = DirectionToOpposing(x, y, stats);
  const double sd = spec.StdDev(stats.intra_distance[y]);
  double magnitude = 0.0;
  if (sd > 0.0) {
    std::normal_distribution<double> eps(0.0, sd);
    magnitude = std::abs(eps(rng));
  }
  if (magnitude == 0.0) return Vec(x.begin(), x.end());
  return Axpy(x, magnitude, u);
}

Vec IsotropicPerturb(std::span<const double> x, ClassId y, const ClassStats& stats,
                     const NoiseSpec& spec, Rng& rng) {
  if (spec.kind != NoiseKind::kIsotropic) throw ConfigError("spec is not isotropic");
  if (y >= stats.n_classes()) throw DomainError("label out of range");
  const double sd = spec.StdDev(stats.intra_distance[y]);
  Vec out(x.begin(), x.end());
  if (sd > 0.0) {
    std::normal_distribution<double> eps(0.0, sd);
    for (double& v : out) v += eps(rng);
  }
  return out;
}

LabeledDataset PerturbedDataset::AsDataset() const {
  if (base == nullptr) throw DomainError("perturbed dataset has no base");
  LabeledDataset ds = *base;
  ds.points = points;
  return ds;
}

PerturbedDataset PerturbDataset(const LabeledDataset& ds, const ClassStats& stats,
                                const NoiseSpec& spec) {
  spec.Validate();
  ds.Validate();
  PerturbedDataset out;
  out.base = &ds;
  out.spec = spec;
  out.points.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    Rng rng(DeriveSeed(spec.seed, Stage::kPerturb, i));
    if (spec.kind == NoiseKind::kDirected) {
      out.points.push_back(DirectedPerturb(ds.points[i], ds.labels[i], stats, spec, rng));
    } else {
      out.points.push_back(IsotropicPerturb(ds.points[i], ds.labels[i], stats, spec, rng));
    }
  }
  return out;
}

std::vector<double> LinearGrid(double lo, double hi, std::size_t count) {
  if (count == 0) throw ConfigError("grid must have at least one point");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

}  // namespace miabench
