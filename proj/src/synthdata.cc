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
#include "miabench/synthdata.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "miabench/errors.h"
#include "miabench/rng.h"

namespace miabench {

void GenConfig::Validate() const {
  if (n_classes < 2) throw ConfigError("n_classes must be at least 2");
  if (dim < 1) throw ConfigError("dim must be at least 1");
  if (clusters_per_class < 1) throw ConfigError("clusters_per_class must be at least 1");
  if (n_samples < 2 * n_classes) {
    throw ConfigError("n_samples must be at least 2 * n_classes");
  }
  if (n_test != 0 && n_test < 2 * n_classes) {
    throw ConfigError("n_test must be 0 or at least 2 * n_classes");
  }
  if (!(class_separation > 0.0) || !std::isfinite(class_separation)) {
    throw ConfigError("class_separation must be positive");
  }
  if (!(cluster_std > 0.0) || !std::isfinite(cluster_std)) {
    throw ConfigError("cluster_std must be positive");
  }
}

const char* SplitName(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  throw ParseError("unknown split tag: " + std::string(name));
}

std::vector<std::size_t> LabeledDataset::IndicesOf(ClassId k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == k) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> LabeledDataset::ClassCounts() const {
  std::vector<std::size_t> counts(n_classes, 0);
  for (ClassId y : labels) {
    if (y < n_classes) ++counts[y];
  }
  return counts;
}

void LabeledDataset::Validate() const {
  if (points.size() != labels.size()) {
    throw ValidationError("points and labels differ in length");
  }
  if (n_classes < 2) throw ValidationError("dataset needs at least 2 classes");
  if (dim < 1) throw ValidationError("dataset dimension must be positive");
  for (const Vec& p : points) {
    if (p.size() != dim) throw ValidationError("point dimension mismatch");
  }
  for (ClassId y : labels) {
    if (y >= n_classes) throw ValidationError("label out of range");
  }
}

std::vector<Vec> MixtureCenters(const GenConfig& cfg) {
  cfg.Validate();
  const std::size_t n_clusters = cfg.n_classes * cfg.clusters_per_class;

  // Smallest per-axis resolution whose grid holds every cluster; a 2-point
  // axis gives the hypercube vertices {-sep, +sep}^d.
  std::size_t per_axis = 2;
  auto grid_size = [&](std::size_t g) {
    double total = 1.0;
    for (std::size_t j = 0; j < cfg.dim; ++j) total *= static_cast<double>(g);
    return total;
  };
  while (grid_size(per_axis) < static_cast<double>(n_clusters)) ++per_axis;

  Rng rng(DeriveSeed(cfg.seed, Stage::kData, 0));
  std::vector<Vec> centers;
  centers.reserve(n_clusters);
  const auto total = static_cast<std::uint64_t>(grid_size(per_axis));
  // Sample distinct grid cells without materializing the grid, which can be
  // huge in high dimension.
  std::vector<std::uint64_t> chosen;
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  while (chosen.size() < n_clusters) {
    const std::uint64_t cell = pick(rng);
    if (std::find(chosen.begin(), chosen.end(), cell) == chosen.end()) {
      chosen.push_back(cell);
    }
  }
  for (std::uint64_t cell : chosen) {
    Vec c(cfg.dim);
    for (std::size_t j = 0; j < cfg.dim; ++j) {
      const std::uint64_t idx = cell % per_axis;
      cell /= per_axis;
      const double unit = 2.0 * static_cast<double>(idx) /
                              static_cast<double>(per_axis - 1) - 1.0;
      c[j] = cfg.class_separation * unit;
    }
    centers.push_back(std::move(c));
  }
  return centers;
}

namespace {

LabeledDataset DrawSplit(const GenConfig& cfg, const std::vector<Vec>& centers,
                         Split split, std::size_t n, std::uint64_t stream) {
  LabeledDataset ds;
  ds.dim = cfg.dim;
  ds.n_classes = cfg.n_classes;
  ds.split = split;
  ds.points.reserve(n);
  ds.labels.reserve(n);

  Rng rng(DeriveSeed(cfg.seed, Stage::kData, stream));
  std::normal_distribution<double> noise(0.0, cfg.cluster_std);
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = static_cast<ClassId>(i % cfg.n_classes);
    const std::size_t within = (i / cfg.n_classes) % cfg.clusters_per_class;
    const Vec& center = centers[label + within * cfg.n_classes];
    Vec p(cfg.dim);
    for (std::size_t j = 0; j < cfg.dim; ++j) p[j] = center[j] + noise(rng);
    ds.points.push_back(std::move(p));
    ds.labels.push_back(label);
  }
  return ds;
}

}  // namespace

DatasetPair GenerateDataset(const GenConfig& cfg) {
  const std::vector<Vec> centers = MixtureCenters(cfg);
  return {DrawSplit(cfg, centers, Split::kTrain, cfg.n_samples, 1),
          DrawSplit(cfg, centers, Split::kTest, cfg.TestSize(), 2)};
}

Vec ClassBarycenter(const LabeledDataset& ds, ClassId k) {
  Vec sum(ds.dim, 0.0);
  std::size_t n = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.labels[i] != k) continue;
    RequireSameDim(sum, ds.points[i]);
    for (std::size_t j = 0; j < ds.dim; ++j) sum[j] += ds.points[i][j];
    ++n;
  }
  if (n == 0) throw DomainError("barycenter of empty class " + std::to_string(k));
  for (double& v : sum) v /= static_cast<double>(n);
  return sum;
}

double IntraClusterDistance(const LabeledDataset& ds, ClassId k,
                            DistanceVariant variant) {
  const std::vector<std::size_t> idx = ds.IndicesOf(k);
  const std::size_t n = idx.size();
  if (n < 2) {
    throw DomainError("intra-cluster distance needs at least 2 points in class " +
                      std::to_string(k));
  }
  // Unordered pairs; the ordered-pair sum is twice this.
  double sum = 0.0;
  for (std::size_t a = 1; a < n; ++a) {
    const Vec& xa = ds.points[idx[a]];
    for (std::size_t b = 0; b < a; ++b) {
      const double d = DistanceL2(xa, ds.points[idx[b]]);
      sum += variant == DistanceVariant::kSquaredDraft ? d * d : d;
    }
  }
  if (variant == DistanceVariant::kSquaredDraft) {
    return sum / static_cast<double>(ds.size());
  }
  const double nd = static_cast<double>(n);
  return 2.0 * sum / (2.0 * (nd - 1.0) * nd);
}

ClassStats ComputeClassStats(const LabeledDataset& ds, DistanceVariant variant) {
  ClassStats stats;
  stats.variant = variant;
  stats.counts = ds.ClassCounts();
  for (ClassId k = 0; k < ds.n_classes; ++k) {
    stats.barycenters.push_back(ClassBarycenter(ds, k));
    stats.intra_distance.push_back(
        stats.counts[k] < 2 ? 0.0 : IntraClusterDistance(ds, k, variant));
  }
  return stats;
}

OpposingBarycenter NearestOpposingBarycenter(const ClassStats& stats,
                                             std::span<const double> x,
                                             ClassId y) {
  if (stats.n_classes() < 2) throw DomainError("need at least 2 classes");
  ClassId best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  bool found = false;
  for (ClassId j = 0; j < stats.n_classes(); ++j) {
    if (j == y) continue;
    const double d = DistanceL2(x, stats.barycenters[j]);
    if (!found || d < best_dist) {
      best = j;
      best_dist = d;
      found = true;
    }
  }
  return {best, stats.barycenters[best]};
}

}  // namespace miabench
