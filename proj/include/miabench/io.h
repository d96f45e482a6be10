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
#ifndef MIABENCH_IO_H_
#define MIABENCH_IO_H_

#include <string>

#include "json.hpp"
#include "miabench/advattack.h"
#include "miabench/defense.h"
#include "miabench/miapath.h"
#include "miabench/mlp.h"
#include "miabench/perturb.h"
#include "miabench/stats.h"
#include "miabench/synthdata.h"

namespace miabench {

using Json = nlohmann::ordered_json;

// Throws ParseError on unreadable or malformed files.
Json ReadJsonFile(const std::string& path);
// Pretty-printed with a trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);
void WriteTextFile(const std::string& path, const std::string& text);

// {dim, n_classes, split, points: [[f64; dim]], labels: [u32]}
Json DatasetToJson(const LabeledDataset& ds);
LabeledDataset DatasetFromJson(const Json& j);

// {layer_sizes, activation, weights: [[row-major f64]], biases: [[f64]]}
Json ModelToJson(const MlpClassifier& model);
MlpClassifier ModelFromJson(const Json& j);

Json ClassStatsToJson(const ClassStats& stats);
ClassStats ClassStatsFromJson(const Json& j);

Json NoiseSpecToJson(const NoiseSpec& spec);
NoiseSpec NoiseSpecFromJson(const Json& j);

// Dataset format plus a "spec" block.
Json PerturbedDatasetToJson(const PerturbedDataset& pd);

Json AdversarialExampleToJson(const AdversarialExample& adv);
AdversarialExample AdversarialExampleFromJson(const Json& j);

Json KsResultToJson(const KsResult& r);
Json BoxplotToJson(const BoxplotSummary& b);
Json EvalReportToJson(const EvalReport& r);
Json EpochRecordToJson(const EpochRecord& r);
Json ExcessReportToJson(const ExcessReport& r);

Json GenConfigToJson(const GenConfig& cfg);
GenConfig GenConfigFromJson(const Json& j);
Json TrainOptsToJson(const TrainOpts& opts);
TrainOpts TrainOptsFromJson(const Json& j);
Json AttackOptsToJson(const AttackOpts& opts);
AttackOpts AttackOptsFromJson(const Json& j);

// Shortest round-trip decimal form of a double, as used in CSV output.
std::string FormatDouble(double v);

}  // namespace miabench

#endif  // MIABENCH_IO_H_
