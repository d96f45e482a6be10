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
// Command-line front end for the miabench pipelines.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "miabench/advattack.h"
#include "miabench/defense.h"
#include "miabench/errors.h"
#include "miabench/harness.h"
#include "miabench/io.h"
#include "miabench/miapath.h"
#include "miabench/mlp.h"
#include "miabench/parallel.h"
#include "miabench/perturb.h"
#include "miabench/synthdata.h"

namespace mb = miabench;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::optional<std::size_t> threads;
};

// Loads the experiment config for a pipeline subcommand: preset, then the
// --config file, then global flags.
mb::ExperimentConfig ResolveConfig(const Globals& g, const mb::ExperimentConfig& preset) {
  mb::ExperimentConfig cfg = preset;
  if (!g.config_path.empty()) {
    cfg = mb::ExperimentConfigFromJson(mb::ReadJsonFile(g.config_path), preset);
  }
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.threads) cfg.threads = *g.threads;
  cfg.Validate();
  return cfg;
}

std::string InOutDir(const Globals& g, const std::string& path) {
  if (g.out_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / path).string();
}

void PrintPaths(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) std::cout << "wrote " << p << "\n";
}

std::vector<std::size_t> ParseLayers(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos);
    if (tok.empty()) throw mb::ConfigError("empty entry in --layers");
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(tok, &used);
      if (used != tok.size() || v == 0) throw mb::ConfigError("bad layer width: " + tok);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw mb::ConfigError("bad layer width: " + tok);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership inference via adversarial path length"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed_flag = 0;
  std::size_t threads_flag = 0;
  app.add_option("--config", g.config_path, "Experiment config JSON")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed_flag, "Root seed");
  app.add_option("--out-dir", g.out_dir, "Output directory");
  auto* threads_opt = app.add_option("--threads", threads_flag, "Worker threads (0 = all cores)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a train/test Gaussian-mixture dataset pair");
  mb::GenConfig gc;
  std::string gen_out = "data";
  gen->add_option("--n", gc.n_samples, "Training samples");
  gen->add_option("--n-test", gc.n_test, "Test samples (default: same as --n)");
  gen->add_option("--classes", gc.n_classes, "Number of classes");
  gen->add_option("--dim", gc.dim, "Input dimension");
  gen->add_option("--clusters", gc.clusters_per_class, "Clusters per class");
  gen->add_option("--sep", gc.class_separation, "Center spread");
  gen->add_option("--std", gc.cluster_std, "Cluster standard deviation");
  gen->add_option("--out", gen_out, "Output stem; writes <out>_train.json and <out>_test.json");

  // train
  auto* train = app.add_subcommand("train", "Train an MLP classifier");
  std::string train_data, train_out = "model.json", layers = "10,10", act = "relu";
  mb::TrainOpts topts;
  train->add_option("--data", train_data, "Training dataset JSON")->required();
  train->add_option("--layers", layers, "Hidden widths, comma separated");
  train->add_option("--activation", act, "relu or tanh");
  train->add_option("--iters", topts.iterations, "SGD iterations");
  train->add_option("--lr", topts.learning_rate, "Learning rate");
  train->add_option("--batch", topts.batch_size, "Batch size");
  train->add_option("--out", train_out, "Model JSON");

  // perturb
  auto* perturb = app.add_subcommand("perturb", "Perturb a dataset with class-scaled noise");
  std::string pert_data, pert_stats, pert_kind = "directed", pert_scale, pert_out = "perturbed.json";
  double pert_kappa = 0.1;
  perturb->add_option("--data", pert_data, "Dataset JSON")->required();
  perturb->add_option("--stats", pert_stats, "Class statistics JSON (computed from --data if absent)");
  perturb->add_option("--kind", pert_kind, "directed or isotropic");
  perturb->add_option("--scale", pert_scale, "std or covariance");
  perturb->add_option("--kappa", pert_kappa, "Noise control factor");
  perturb->add_option("--out", pert_out, "Perturbed dataset JSON");

  // attack
  auto* attack = app.add_subcommand("attack", "Find minimal adversarial examples");
  std::string atk_model, atk_data, atk_out = "adversarial.json";
  mb::AttackOpts aopts;
  attack->add_option("--model", atk_model, "Model JSON")->required();
  attack->add_option("--data", atk_data, "Dataset JSON")->required();
  attack->add_option("--tol", aopts.bisect_tol, "Boundary bisection tolerance");
  attack->add_option("--max-iters", aopts.max_iters, "Linearized steps before giving up");
  attack->add_option("--out", atk_out, "Output JSON list");

  // mia
  auto* mia = app.add_subcommand("mia", "Evaluate membership inference on a trained model");
  std::string mia_model, mia_train, mia_test, mia_out = "mia_report.json";
  std::vector<std::string> mia_strategies;
  std::size_t mia_samples = mb::kDefaultPathSamples;
  bool mia_shuffle = false;
  mia->add_option("--model", mia_model, "Model JSON")->required();
  mia->add_option("--train", mia_train, "Member dataset JSON")->required();
  mia->add_option("--test", mia_test, "Non-member dataset JSON")->required();
  mia->add_option("--strategy", mia_strategies, "sisyphos, dist-l1, dist-l2, dist-linf (repeatable)");
  auto* mia_samples_opt = mia->add_option("--path-samples", mia_samples, "Path partition size N");
  mia->add_flag("--shuffle-membership", mia_shuffle, "Permute membership labels (null run)");
  mia->add_option("--out", mia_out, "Report JSON; scores go to <out stem>_scores.csv");

  // motivate
  auto* motivate = app.add_subcommand("motivate", "Run the confidence-peak KS study");
  std::string mot_kind;
  std::optional<std::size_t> mot_repeats;
  motivate->add_option("--kind", mot_kind, "directed or isotropic");
  motivate->add_option("--repeats", mot_repeats, "Outer repeats");

  // defend
  auto* defend = app.add_subcommand("defend", "Train with label-noise injection");
  std::string def_data, def_val, def_schedule = "constant", def_model_out = "defended_model.json",
                                 def_report = "defense_report.json", def_layers = "10,10";
  double def_zeta = 0.1, def_prob = 1.0;
  std::size_t def_patience = 0;
  mb::TrainOpts dopts;
  defend->add_option("--data", def_data, "Training dataset JSON")->required();
  defend->add_option("--val", def_val, "Validation dataset JSON");
  defend->add_option("--layers", def_layers, "Hidden widths, comma separated");
  defend->add_option("--zeta", def_zeta, "Label noise level");
  defend->add_option("--inject-prob", def_prob, "Per-sample injection probability");
  defend->add_option("--schedule", def_schedule, "constant or ramp:<rate>");
  defend->add_option("--patience", def_patience, "Early-stopping patience in epochs (0 = off)");
  defend->add_option("--iters", dopts.iterations, "SGD iterations");
  defend->add_option("--lr", dopts.learning_rate, "Learning rate");
  defend->add_option("--batch", dopts.batch_size, "Batch size");
  defend->add_option("--out-model", def_model_out, "Defended model JSON");
  defend->add_option("--out-report", def_report, "Per-epoch report JSON");

  auto* sweep = app.add_subcommand("defend-sweep", "Sweep the label noise level over a grid");
  auto* mia_exp = app.add_subcommand("mia-experiment", "Train the overfit config and compare strategies");

  // minimality
  auto* minimality = app.add_subcommand("minimality", "Partial-noise curves for both attacks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (*seed_opt) g.seed = seed_flag;
  if (*threads_opt) g.threads = threads_flag;
  const std::uint64_t seed = g.seed.value_or(0);
  const std::size_t threads = g.threads ? (*g.threads == 0 ? mb::DefaultThreads() : *g.threads)
                                        : std::size_t{1};

  try {
    if (*gen) {
      gc.seed = seed;
      const mb::DatasetPair pair = mb::GenerateDataset(gc);
      const std::string stem = InOutDir(g, gen_out);
      mb::WriteJsonFile(stem + "_train.json", mb::DatasetToJson(pair.train));
      mb::WriteJsonFile(stem + "_test.json", mb::DatasetToJson(pair.test));
      PrintPaths({stem + "_train.json", stem + "_test.json"});
    } else if (*train) {
      const mb::LabeledDataset ds = mb::DatasetFromJson(mb::ReadJsonFile(train_data));
      std::vector<std::size_t> sizes{ds.dim};
      for (std::size_t h : ParseLayers(layers)) sizes.push_back(h);
      sizes.push_back(ds.n_classes);
      const mb::Activation a = mb::ParseActivation(act);
      topts.seed = mb::DeriveSeed(seed, mb::Stage::kTrain);
      topts.Validate(ds.size());
      mb::MlpClassifier model = mb::MlpClassifier::GlorotInit(
          sizes, a, mb::DeriveSeed(seed, mb::Stage::kInit));
      model = mb::Train(std::move(model), ds, topts);
      const std::string out = InOutDir(g, train_out);
      mb::SaveModel(model, out);
      std::cout << "train accuracy " << mb::FormatDouble(mb::Accuracy(model, ds)) << "\n";
      PrintPaths({out});
    } else if (*perturb) {
      const mb::LabeledDataset ds = mb::DatasetFromJson(mb::ReadJsonFile(pert_data));
      const mb::ClassStats stats = pert_stats.empty()
                                       ? mb::ComputeClassStats(ds)
                                       : mb::ClassStatsFromJson(mb::ReadJsonFile(pert_stats));
      mb::NoiseSpec spec = mb::NoiseSpec::Make(mb::ParseNoiseKind(pert_kind), pert_kappa,
                                               mb::DeriveSeed(seed, mb::Stage::kPerturb));
      if (!pert_scale.empty()) spec.scale = mb::ParseScaleSemantics(pert_scale);
      spec.Validate();
      const std::string out = InOutDir(g, pert_out);
      mb::WriteJsonFile(out, mb::PerturbedDatasetToJson(mb::PerturbDataset(ds, stats, spec)));
      PrintPaths({out});
    } else if (*attack) {
      aopts.Validate();
      const mb::MlpClassifier model = mb::LoadModel(atk_model);
      const mb::LabeledDataset ds = mb::DatasetFromJson(mb::ReadJsonFile(atk_data));
      std::vector<mb::Json> records(ds.size());
      std::size_t failures = 0;
      std::vector<char> failed(ds.size(), 0);
      mb::ParallelFor(ds.size(), threads, [&](std::size_t i) {
        try {
          records[i] = mb::AdversarialExampleToJson(mb::FindAdversarial(model, ds.points[i], aopts));
          records[i]["fooled"] = true;
        } catch (const mb::NotFooled& e) {
          records[i] = mb::AdversarialExampleToJson(e.best());
          records[i]["fooled"] = false;
          failed[i] = 1;
        }
      });
      for (char f : failed) failures += f;
      mb::Json list = mb::Json::array();
      for (auto& r : records) list.push_back(std::move(r));
      const std::string out = InOutDir(g, atk_out);
      mb::WriteJsonFile(out, list);
      std::cout << "not fooled " << failures << " of " << ds.size() << "\n";
      PrintPaths({out});
    } else if (*mia) {
      mb::ExperimentConfig cfg = ResolveConfig(g, mb::MiaDefaults());
      if (!mia_strategies.empty()) {
        cfg.mia.strategies.clear();
        for (const std::string& s : mia_strategies) {
          cfg.mia.strategies.push_back(mb::ParseMiaStrategy(s));
        }
      }
      if (*mia_samples_opt) cfg.mia.path_samples = mia_samples;
      if (mia_shuffle) cfg.mia.shuffle_membership = true;
      cfg.Validate();
      const mb::MlpClassifier model = mb::LoadModel(mia_model);
      const mb::LabeledDataset tr = mb::DatasetFromJson(mb::ReadJsonFile(mia_train));
      const mb::LabeledDataset te = mb::DatasetFromJson(mb::ReadJsonFile(mia_test));
      const mb::MiaReport report = mb::RunMiaOnModel(model, tr, te, cfg);
      const std::string json_path = InOutDir(g, mia_out);
      const std::filesystem::path p(json_path);
      const std::string csv_path =
          (p.parent_path() / (p.stem().string() + "_scores.csv")).string();
      for (std::size_t k = 0; k < report.strategies.size(); ++k) {
        std::cout << mb::MiaStrategyName(report.strategies[k]) << " auc "
                  << mb::FormatDouble(report.reports[k].auc) << "\n";
      }
      PrintPaths(mb::WriteMia(report, cfg, json_path, csv_path));
    } else if (*mia_exp) {
      const mb::ExperimentConfig cfg = ResolveConfig(g, mb::MiaDefaults());
      const mb::MiaReport report = mb::RunMiaComparison(cfg);
      for (std::size_t k = 0; k < report.strategies.size(); ++k) {
        std::cout << mb::MiaStrategyName(report.strategies[k]) << " auc "
                  << mb::FormatDouble(report.reports[k].auc) << "\n";
      }
      const std::filesystem::path dir(cfg.out_dir);
      std::filesystem::create_directories(dir);
      PrintPaths(mb::WriteMia(report, cfg, (dir / "mia.json").string(),
                              (dir / "mia_scores.csv").string()));
    } else if (*motivate) {
      mb::ExperimentConfig cfg = ResolveConfig(g, mb::MotivationDefaults());
      if (!mot_kind.empty()) cfg.noise.kind = mb::ParseNoiseKind(mot_kind);
      if (mot_repeats) cfg.repeats = *mot_repeats;
      cfg.Validate();
      PrintPaths(mb::WriteMotivation(mb::RunMotivation(cfg), cfg));
    } else if (*defend) {
      const mb::LabeledDataset ds = mb::DatasetFromJson(mb::ReadJsonFile(def_data));
      std::optional<mb::LabeledDataset> val;
      if (!def_val.empty()) val = mb::DatasetFromJson(mb::ReadJsonFile(def_val));
      mb::DefenseConfig dc;
      dc.zeta = def_zeta;
      dc.injection_prob = def_prob;
      dc.schedule = mb::Schedule::Parse(def_schedule);
      dc.patience = def_patience;
      dc.train_opts = dopts;
      dc.train_opts.seed = mb::DeriveSeed(seed, mb::Stage::kTrain);
      dc.Validate(ds.n_classes);
      dc.train_opts.Validate(ds.size());
      std::vector<std::size_t> sizes{ds.dim};
      for (std::size_t h : ParseLayers(def_layers)) sizes.push_back(h);
      sizes.push_back(ds.n_classes);
      mb::MlpClassifier init = mb::MlpClassifier::GlorotInit(
          sizes, mb::Activation::kRelu, mb::DeriveSeed(seed, mb::Stage::kInit));
      const mb::DefenseResult result =
          mb::TrainWithLabelNoise(ds, std::move(init), dc, val ? &*val : nullptr);
      mb::Json report;
      mb::Json epochs = mb::Json::array();
      for (const mb::EpochRecord& r : result.history) epochs.push_back(mb::EpochRecordToJson(r));
      report["epochs"] = std::move(epochs);
      report["stopped_early"] = result.stopped_early;
      if (val) report["excess"] = mb::ExcessReportToJson(mb::ExcessConfidence(result.model, ds, *val));
      const std::string model_out = InOutDir(g, def_model_out);
      const std::string report_out = InOutDir(g, def_report);
      mb::SaveModel(result.model, model_out);
      mb::WriteJsonFile(report_out, report);
      PrintPaths({model_out, report_out});
    } else if (*sweep) {
      const mb::ExperimentConfig cfg = ResolveConfig(g, mb::DefenseDefaults());
      PrintPaths(mb::WriteDefense(mb::RunDefenseSweep(cfg), cfg));
    } else if (*minimality) {
      const mb::ExperimentConfig cfg = ResolveConfig(g, mb::MotivationDefaults());
      PrintPaths(mb::WriteMinimality(mb::RunMinimalityCurve(cfg), cfg));
    }
  } catch (const mb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mb::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
