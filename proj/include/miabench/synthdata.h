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
#ifndef MIABENCH_SYNTHDATA_H_
#define MIABENCH_SYNTHDATA_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "miabench/vec.h"

namespace miabench {

using ClassId = std::uint32_t;

struct GenConfig {
  std::size_t n_samples = 2000;
  // Size of the test split; 0 means n_samples.
  std::size_t n_test = 0;
  std::size_t n_classes = 4;
  std::size_t dim = 2;
  std::size_t clusters_per_class = 1;
  double class_separation = 1.0;
  double cluster_std = 1.0;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
  std::size_t TestSize() const { return n_test == 0 ? n_samples : n_test; }
};

enum class Split { kTrain, kTest };

const char* SplitName(Split split);
Split ParseSplit(std::string_view name);

struct LabeledDataset {
  std::size_t dim = 0;
  std::size_t n_classes = 0;
  Split split = Split::kTrain;
  std::vector<Vec> points;
  std::vector<ClassId> labels;

  std::size_t size() const { return points.size(); }
  std::vector<std::size_t> IndicesOf(ClassId k) const;
  std::vector<std::size_t> ClassCounts() const;
  // Structural checks only (sizes, dims, label range). Throws ValidationError.
  void Validate() const;
};

struct DatasetPair {
  LabeledDataset train;
  LabeledDataset test;
};

// Draws a train split of cfg.n_samples points and a test split of
// cfg.TestSize() points from the same Gaussian mixture. Labels are assigned
// round-robin so class counts differ by at most one.
DatasetPair GenerateDataset(const GenConfig& cfg);

// Cluster centers used by GenerateDataset, indexed by cluster; cluster j
// belongs to class j % n_classes.
std::vector<Vec> MixtureCenters(const GenConfig& cfg);

Vec ClassBarycenter(const LabeledDataset& ds, ClassId k);

// kPairwiseMean: sum over ordered pairs of ||Xi - Xj|| divided by
//   2 (n - 1) n, i.e. half the mean pairwise distance.
// kSquaredDraft: sum over unordered pairs of ||Xi - Xj||^2 divided by the
//   size of the whole dataset.
enum class DistanceVariant { kPairwiseMean, kSquaredDraft };

double IntraClusterDistance(const LabeledDataset& ds, ClassId k,
                            DistanceVariant variant = DistanceVariant::kPairwiseMean);

struct ClassStats {
  std::vector<Vec> barycenters;
  std::vector<double> intra_distance;
  std::vector<std::size_t> counts;
  DistanceVariant variant = DistanceVariant::kPairwiseMean;

  std::size_t n_classes() const { return barycenters.size(); }
};

// Every class must be non-empty. Single-point classes get distance 0.
ClassStats ComputeClassStats(const LabeledDataset& ds,
                             DistanceVariant variant = DistanceVariant::kPairwiseMean);

struct OpposingBarycenter {
  ClassId label;
  Vec center;
};

// Closest barycenter among classes other than y; ties go to the smaller
// class index.
OpposingBarycenter NearestOpposingBarycenter(const ClassStats& stats,
                                             std::span<const double> x,
                                             ClassId y);

}  // namespace miabench

#endif  // MIABENCH_SYNTHDATA_H_
