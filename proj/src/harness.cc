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
#include "miabench/harness.h"

#include <algorithm>
#include <array>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "miabench/errors.h"
#include "miabench/parallel.h"
#include "miabench/rng.h"

namespace miabench {

void ExperimentConfig::Validate() const {
  gen.Validate();
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (noise.kappas.empty()) throw ConfigError("kappa grid is empty");
  for (double k : noise.kappas) {
    if (!(k >= 0.0)) throw ConfigError("kappa values must be >= 0");
  }
  if (defense.zetas.empty()) throw ConfigError("zeta grid is empty");
  if (mia.strategies.empty()) throw ConfigError("no MIA strategies selected");
  for (MiaStrategy s : mia.strategies) {
    if (s == MiaStrategy::kCustom) throw ConfigError("custom strategies need the library API");
  }
  if (mia.path_samples < 1) throw ConfigError("path_samples must be at least 1");
  if (mia.pool_size < 1) throw ConfigError("pool_size must be at least 1");
  mia.attack.Validate();
  model.train.Validate(gen.n_samples);
  if (bivariate.method == KsMethod::kPermutation && bivariate.permutations == 0) {
    throw ConfigError("permutation count must be positive");
  }
}

ExperimentConfig MotivationDefaults() {
  ExperimentConfig cfg;
  return cfg;
}

ExperimentConfig MiaDefaults() {
  ExperimentConfig cfg;
  cfg.gen.n_samples = 200;
  cfg.gen.dim = 10;
  cfg.gen.cluster_std = 2.0;
  cfg.model.hidden = {64, 64};
  cfg.model.train.batch_size = 32;
  cfg.model.train.learning_rate = 0.05;
  cfg.repeats = 10;
  return cfg;
}

ExperimentConfig DefenseDefaults() {
  ExperimentConfig cfg;
  cfg.gen.n_classes = 10;
  cfg.gen.n_samples = 1000;
  cfg.gen.dim = 10;
  cfg.gen.cluster_std = 1.5;
  cfg.model.hidden = {64, 64};
  cfg.repeats = 1;
  return cfg;
}

namespace {

template <typename T>
void Take(const Json& j, const char* key, T& field) {
  if (!j.is_object() || !j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config field ") + key + ": " + e.what());
  }
}

const Json* Section(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return nullptr;
  if (!j.at(key).is_object()) throw ConfigError(std::string("config section ") + key +
                                                " must be an object");
  return &j.at(key);
}

void RejectUnknownKeys(const Json& given, const Json& known, const std::string& path) {
  for (const auto& [key, value] : given.items()) {
    if (path.empty() && key == "out_dir") continue;
    if (!known.contains(key)) throw ConfigError("unknown config key " + path + key);
    if (value.is_object() && known.at(key).is_object()) {
      RejectUnknownKeys(value, known.at(key), path + key + ".");
    }
  }
}

}  // namespace

Json ExperimentConfigToJson(const ExperimentConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["repeats"] = cfg.repeats;
  j["threads"] = cfg.threads;
  j["gen"] = GenConfigToJson(cfg.gen);
  Json model;
  model["hidden"] = cfg.model.hidden;
  model["activation"] = ActivationName(cfg.model.activation);
  model["train"] = TrainOptsToJson(cfg.model.train);
  j["model"] = std::move(model);
  Json noise;
  noise["kind"] = NoiseKindName(cfg.noise.kind);
  noise["scale_semantics"] = ScaleSemanticsName(
      cfg.noise.scale.value_or(DefaultSemantics(cfg.noise.kind)));
  noise["kappas"] = cfg.noise.kappas;
  j["noise"] = std::move(noise);
  Json biv;
  biv["method"] = KsMethodName(cfg.bivariate.method);
  biv["permutations"] = cfg.bivariate.permutations;
  j["bivariate"] = std::move(biv);
  Json mia;
  Json strategies = Json::array();
  for (MiaStrategy s : cfg.mia.strategies) strategies.push_back(MiaStrategyName(s));
  mia["strategies"] = std::move(strategies);
  mia["path_samples"] = cfg.mia.path_samples;
  mia["attack"] = AttackOptsToJson(cfg.mia.attack);
  mia["heuristic_step_fraction"] = cfg.mia.heuristic.step_fraction;
  mia["heuristic_max_steps"] = cfg.mia.heuristic.max_steps;
  mia["pool_size"] = cfg.mia.pool_size;
  mia["shuffle_membership"] = cfg.mia.shuffle_membership;
  j["mia"] = std::move(mia);
  Json defense;
  defense["zetas"] = cfg.defense.zetas;
  defense["schedule"] = cfg.defense.schedule.ToString();
  defense["injection_prob"] = cfg.defense.injection_prob;
  defense["patience"] = cfg.defense.patience;
  defense["run_mia"] = cfg.defense.run_mia;
  j["defense"] = std::move(defense);
  return j;
}

ExperimentConfig ExperimentConfigFromJson(const Json& j, const ExperimentConfig& base) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  RejectUnknownKeys(j, ExperimentConfigToJson(base), "");
  ExperimentConfig cfg = base;
  Take(j, "seed", cfg.seed);
  Take(j, "repeats", cfg.repeats);
  Take(j, "threads", cfg.threads);
  Take(j, "out_dir", cfg.out_dir);
  try {
    if (const Json* g = Section(j, "gen")) {
      Json merged = GenConfigToJson(cfg.gen);
      merged.update(*g);
      cfg.gen = GenConfigFromJson(merged);
    }
    if (const Json* m = Section(j, "model")) {
      Take(*m, "hidden", cfg.model.hidden);
      if (m->contains("activation")) {
        cfg.model.activation = ParseActivation(m->at("activation").get<std::string>());
      }
      if (const Json* t = Section(*m, "train")) {
        Json merged = TrainOptsToJson(cfg.model.train);
        merged.update(*t);
        cfg.model.train = TrainOptsFromJson(merged);
      }
    }
    if (const Json* n = Section(j, "noise")) {
      if (n->contains("kind")) cfg.noise.kind = ParseNoiseKind(n->at("kind").get<std::string>());
      if (n->contains("scale_semantics")) {
        cfg.noise.scale = ParseScaleSemantics(n->at("scale_semantics").get<std::string>());
      }
      Take(*n, "kappas", cfg.noise.kappas);
    }
    if (const Json* b = Section(j, "bivariate")) {
      if (b->contains("method")) {
        cfg.bivariate.method = ParseKsMethod(b->at("method").get<std::string>());
      }
      Take(*b, "permutations", cfg.bivariate.permutations);
    }
    if (const Json* m = Section(j, "mia")) {
      if (m->contains("strategies")) {
        cfg.mia.strategies.clear();
        for (const auto& s : m->at("strategies")) {
          cfg.mia.strategies.push_back(ParseMiaStrategy(s.get<std::string>()));
        }
      }
      Take(*m, "path_samples", cfg.mia.path_samples);
      if (const Json* a = Section(*m, "attack")) {
        Json merged = AttackOptsToJson(cfg.mia.attack);
        merged.update(*a);
        cfg.mia.attack = AttackOptsFromJson(merged);
      }
      Take(*m, "heuristic_step_fraction", cfg.mia.heuristic.step_fraction);
      Take(*m, "heuristic_max_steps", cfg.mia.heuristic.max_steps);
      Take(*m, "pool_size", cfg.mia.pool_size);
      Take(*m, "shuffle_membership", cfg.mia.shuffle_membership);
    }
    if (const Json* d = Section(j, "defense")) {
      Take(*d, "zetas", cfg.defense.zetas);
      if (d->contains("schedule")) {
        cfg.defense.schedule = Schedule::Parse(d->at("schedule").get<std::string>());
      }
      Take(*d, "injection_prob", cfg.defense.injection_prob);
      Take(*d, "patience", cfg.defense.patience);
      Take(*d, "run_mia", cfg.defense.run_mia);
    }
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return cfg;
}

namespace {

std::vector<std::size_t> LayerSizes(const ExperimentConfig& cfg) {
  std::vector<std::size_t> sizes;
  sizes.push_back(cfg.gen.dim);
  for (std::size_t h : cfg.model.hidden) sizes.push_back(h);
  sizes.push_back(cfg.gen.n_classes);
  return sizes;
}

TrainOpts RepeatTrainOpts(const ExperimentConfig& cfg, std::size_t repeat) {
  TrainOpts opts = cfg.model.train;
  opts.seed = DeriveSeed(cfg.seed, Stage::kTrain, repeat);
  return opts;
}

MlpClassifier InitialModel(const ExperimentConfig& cfg, std::size_t repeat) {
  return MlpClassifier::GlorotInit(LayerSizes(cfg), cfg.model.activation,
                                   DeriveSeed(cfg.seed, Stage::kInit, repeat));
}

DatasetPair RepeatData(const ExperimentConfig& cfg, std::size_t repeat) {
  GenConfig gen = cfg.gen;
  gen.seed = DeriveSeed(cfg.seed, Stage::kData, repeat);
  return GenerateDataset(gen);
}

std::size_t Threads(const ExperimentConfig& cfg) {
  return cfg.threads == 0 ? DefaultThreads() : cfg.threads;
}

}  // namespace

TrainedSetup PrepareRepeat(const ExperimentConfig& cfg, std::size_t repeat) {
  TrainedSetup setup{RepeatData(cfg, repeat), InitialModel(cfg, repeat)};
  setup.model = Train(std::move(setup.model), setup.data.train, RepeatTrainOpts(cfg, repeat));
  return setup;
}

const char* PairName(PairKind p) { return p == PairKind::kTrain ? "train" : "test"; }

const char* TestName(TestKind t) {
  return t == TestKind::kScoreUnivariate ? "score_uni" : "input_biv";
}

const MotivationCell& MotivationReport::Cell(std::size_t kappa_index, PairKind pair,
                                             TestKind test) const {
  const std::size_t idx = kappa_index * 4 + (pair == PairKind::kTrain ? 0 : 2) +
                          (test == TestKind::kScoreUnivariate ? 0 : 1);
  if (idx >= cells.size()) throw DomainError("motivation cell out of range");
  return cells[idx];
}

namespace {

struct RepeatOutcome {
  // [kappa][pair][test]
  std::vector<std::array<std::array<double, 2>, 2>> p;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

std::array<double, 2> SplitPValues(const MlpClassifier& model, const LabeledDataset& ds,
                                   const ClassStats& stats, const NoiseSpec& spec,
                                   const BivariateOpts& biv) {
  const PerturbedDataset noisy = PerturbDataset(ds, stats, spec);
  std::vector<KsResult> uni;
  std::vector<KsResult> bi;
  for (ClassId k = 0; k < ds.n_classes; ++k) {
    const std::vector<std::size_t> idx = ds.IndicesOf(k);
    std::vector<double> s0, s1;
    std::vector<Vec> p0, p1;
    for (std::size_t i : idx) {
      s0.push_back(model.MaxScore(ds.points[i]));
      s1.push_back(model.MaxScore(noisy.points[i]));
      p0.push_back(ds.points[i]);
      p1.push_back(noisy.points[i]);
    }
    uni.push_back(KsUnivariate(s0, s1));
    BivariateOpts opts = biv;
    opts.seed = DeriveSeed(biv.seed, k);
    bi.push_back(KsBivariate(p0, p1, opts));
  }
  return {AveragePValues(uni), AveragePValues(bi)};
}

}  // namespace

MotivationReport RunMotivation(const ExperimentConfig& cfg) {
  cfg.Validate();
  if (cfg.gen.dim != 2) throw ConfigError("the motivation study needs 2-d inputs");
  const std::size_t n_kappa = cfg.noise.kappas.size();
  std::vector<RepeatOutcome> outcomes(cfg.repeats);

  ParallelFor(cfg.repeats, Threads(cfg), [&](std::size_t r) {
    const TrainedSetup setup = PrepareRepeat(cfg, r);
    RepeatOutcome& out = outcomes[r];
    out.train_accuracy = Accuracy(setup.model, setup.data.train);
    out.test_accuracy = Accuracy(setup.model, setup.data.test);
    out.p.resize(n_kappa);
    const LabeledDataset* splits[2] = {&setup.data.train, &setup.data.test};
    const ClassStats stats[2] = {ComputeClassStats(setup.data.train),
                                 ComputeClassStats(setup.data.test)};
    const std::uint64_t repeat_seed = DeriveSeed(cfg.seed, Stage::kPerturb, r);
    for (std::size_t k = 0; k < n_kappa; ++k) {
      for (std::size_t s = 0; s < 2; ++s) {
        const std::uint64_t cell_seed = DeriveSeed(DeriveSeed(repeat_seed, k), s);
        NoiseSpec spec = NoiseSpec::Make(cfg.noise.kind, cfg.noise.kappas[k], cell_seed);
        if (cfg.noise.scale) spec.scale = *cfg.noise.scale;
        BivariateOpts biv = cfg.bivariate;
        biv.seed = DeriveSeed(cell_seed, Stage::kPermutation);
        out.p[k][s] = SplitPValues(setup.model, *splits[s], stats[s], spec, biv);
      }
    }
  });

  MotivationReport report;
  for (std::size_t k = 0; k < n_kappa; ++k) {
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t t = 0; t < 2; ++t) {
        MotivationCell cell;
        cell.kappa = cfg.noise.kappas[k];
        cell.pair = s == 0 ? PairKind::kTrain : PairKind::kTest;
        cell.test = t == 0 ? TestKind::kScoreUnivariate : TestKind::kInputBivariate;
        for (const RepeatOutcome& o : outcomes) cell.p_values.push_back(o.p[k][s][t]);
        cell.summary = SummarizeBoxplot(cell.p_values);
        report.cells.push_back(std::move(cell));
      }
    }
  }
  for (const RepeatOutcome& o : outcomes) {
    report.train_accuracy.push_back(o.train_accuracy);
    report.test_accuracy.push_back(o.test_accuracy);
  }
  return report;
}

const EvalReport& MiaReport::For(MiaStrategy s) const {
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (strategies[i] == s) return reports[i];
  }
  throw DomainError(std::string("strategy not evaluated: ") + MiaStrategyName(s));
}

namespace {

std::vector<std::size_t> Subsample(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(n, m));
  return idx;
}

}  // namespace

MiaReport RunMiaOnModel(const MlpClassifier& model, const LabeledDataset& train,
                        const LabeledDataset& test, const ExperimentConfig& cfg) {
  cfg.mia.attack.Validate();
  if (train.size() == 0 || test.size() == 0) {
    throw DomainError("membership inference needs train and test samples");
  }
  const std::size_t m = std::min({cfg.mia.pool_size, train.size(), test.size()});
  Rng pool_rng(DeriveSeed(cfg.seed, Stage::kPool));
  const std::vector<std::size_t> members = Subsample(train.size(), m, pool_rng);
  const std::vector<std::size_t> nonmembers = Subsample(test.size(), m, pool_rng);

  std::vector<const Vec*> pool;
  std::vector<bool> membership;
  for (std::size_t i : members) {
    pool.push_back(&train.points[i]);
    membership.push_back(true);
  }
  for (std::size_t i : nonmembers) {
    pool.push_back(&test.points[i]);
    membership.push_back(false);
  }
  if (cfg.mia.shuffle_membership) {
    Rng shuffle_rng(DeriveSeed(cfg.seed, Stage::kShuffle));
    std::shuffle(membership.begin(), membership.end(), shuffle_rng);
  }

  MiaReport report;
  report.strategies = cfg.mia.strategies;
  report.train_accuracy = Accuracy(model, train);
  report.test_accuracy = Accuracy(model, test);
  report.samples.resize(pool.size());
  ParallelFor(pool.size(), Threads(cfg), [&](std::size_t i) {
    const Vec& x = *pool[i];
    AdversarialExample adv;
    bool fooled = true;
    try {
      adv = FindAdversarial(model, x, cfg.mia.attack);
    } catch (const NotFooled& e) {
      fooled = false;
      adv = e.best();
      adv.x_adv = adv.x;
      std::fill(adv.epsilon.begin(), adv.epsilon.end(), 0.0);
      adv.eps_norm_l2 = 0.0;
    }
    MiaSampleScore& s = report.samples[i];
    s.sample_id = i;
    s.member = membership[i];
    s.fooled = fooled;
    for (MiaStrategy strategy : cfg.mia.strategies) {
      s.scores.push_back(
          fooled ? MiaScore(MiaRule{strategy, 0.0, {}}, model, adv, cfg.mia.path_samples) : 0.0);
    }
  });

  for (const MiaSampleScore& s : report.samples) {
    if (!s.fooled) ++report.n_not_fooled;
  }
  for (std::size_t k = 0; k < report.strategies.size(); ++k) {
    std::vector<double> in, out;
    for (const MiaSampleScore& s : report.samples) {
      (s.member ? in : out).push_back(s.scores[k]);
    }
    if (in.empty() || out.empty()) throw DomainError("membership pool lost a side");
    report.reports.push_back(EvaluateAttack(in, out));
  }
  return report;
}

MiaReport RunMiaComparison(const ExperimentConfig& cfg) {
  cfg.Validate();
  const TrainedSetup setup = PrepareRepeat(cfg, 0);
  return RunMiaOnModel(setup.model, setup.data.train, setup.data.test, cfg);
}

DefenseSweepReport RunDefenseSweep(const ExperimentConfig& cfg) {
  cfg.Validate();
  const DatasetPair data = RepeatData(cfg, 0);
  const MlpClassifier init = InitialModel(cfg, 0);
  DefenseSweepReport report;
  report.cells.resize(cfg.defense.zetas.size());
  // Cells run in parallel; the MIA stage inside each cell stays serial.
  ExperimentConfig inner = cfg;
  inner.threads = 1;
  ParallelFor(cfg.defense.zetas.size(), Threads(cfg), [&](std::size_t z) {
    DefenseConfig dc;
    dc.zeta = cfg.defense.zetas[z];
    dc.schedule = cfg.defense.schedule;
    dc.injection_prob = cfg.defense.injection_prob;
    dc.patience = cfg.defense.patience;
    dc.train_opts = RepeatTrainOpts(cfg, 0);
    DefenseResult result = TrainWithLabelNoise(data.train, init, dc, &data.test);
    DefenseCell& cell = report.cells[z];
    cell.zeta = dc.zeta;
    cell.history = std::move(result.history);
    cell.stopped_early = result.stopped_early;
    cell.model = std::move(result.model);
    cell.excess = ExcessConfidence(cell.model, data.train, data.test);
    cell.train_accuracy = Accuracy(cell.model, data.train);
    cell.val_accuracy = Accuracy(cell.model, data.test);
    if (cfg.defense.run_mia) {
      cell.mia = RunMiaOnModel(cell.model, data.train, data.test, inner);
    }
  });
  return report;
}

namespace {

std::vector<double> PartialNoiseRatio(const MlpClassifier& model,
                                      const std::vector<AdversarialExample>& advs,
                                      std::size_t n_intervals) {
  std::vector<double> ratio(n_intervals + 1, 0.0);
  for (std::size_t k = 0; k <= n_intervals; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_intervals);
    std::size_t same = 0;
    for (const AdversarialExample& adv : advs) {
      const Vec x = k == n_intervals ? adv.x_adv : Axpy(adv.x, t, adv.epsilon);
      if (model.Predict(x) == adv.y_orig) ++same;
    }
    ratio[k] = static_cast<double>(same) / static_cast<double>(advs.size());
  }
  return ratio;
}

AdversarialExample Unfooled(const NotFooled& e) {
  AdversarialExample adv = e.best();
  adv.x_adv = adv.x;
  std::fill(adv.epsilon.begin(), adv.epsilon.end(), 0.0);
  adv.eps_norm_l2 = 0.0;
  adv.y_adv = adv.y_orig;
  return adv;
}

}  // namespace

MinimalityCurve RunMinimalityCurve(const ExperimentConfig& cfg) {
  cfg.Validate();
  const TrainedSetup setup = PrepareRepeat(cfg, 0);
  const LabeledDataset& test = setup.data.test;
  const ClassStats stats = ComputeClassStats(test);
  Rng pool_rng(DeriveSeed(cfg.seed, Stage::kPool));
  const std::vector<std::size_t> pool = Subsample(test.size(), cfg.mia.pool_size, pool_rng);

  std::vector<AdversarialExample> minimal(pool.size());
  std::vector<AdversarialExample> heuristic(pool.size());
  std::vector<char> min_ok(pool.size(), 0);
  std::vector<char> heu_ok(pool.size(), 0);
  ParallelFor(pool.size(), Threads(cfg), [&](std::size_t i) {
    const Vec& x = test.points[pool[i]];
    try {
      minimal[i] = FindAdversarial(setup.model, x, cfg.mia.attack);
      min_ok[i] = 1;
    } catch (const NotFooled& e) {
      minimal[i] = Unfooled(e);
    }
    try {
      heuristic[i] = DirectedHeuristicAttack(setup.model, x, stats, cfg.mia.heuristic);
      heu_ok[i] = 1;
    } catch (const NotFooled& e) {
      heuristic[i] = Unfooled(e);
    }
  });

  MinimalityCurve curve;
  curve.n_intervals = cfg.mia.path_samples;
  curve.n_samples = pool.size();
  curve.minimal_ratio = PartialNoiseRatio(setup.model, minimal, curve.n_intervals);
  curve.heuristic_ratio = PartialNoiseRatio(setup.model, heuristic, curve.n_intervals);
  std::vector<double> min_norms, heu_norms;
  std::size_t min_count = 0, heu_count = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    min_count += min_ok[i] ? 1 : 0;
    heu_count += heu_ok[i] ? 1 : 0;
    if (min_ok[i] && heu_ok[i]) {
      min_norms.push_back(minimal[i].eps_norm_l2);
      heu_norms.push_back(heuristic[i].eps_norm_l2);
    }
  }
  curve.minimal_success_rate = static_cast<double>(min_count) / static_cast<double>(pool.size());
  curve.heuristic_success_rate = static_cast<double>(heu_count) / static_cast<double>(pool.size());
  curve.n_both_fooled = min_norms.size();
  if (!min_norms.empty()) {
    curve.minimal_median_norm = Median(min_norms);
    curve.heuristic_median_norm = Median(heu_norms);
  }
  return curve;
}

namespace {

std::string PathIn(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

}  // namespace

std::vector<std::string> WriteMotivation(const MotivationReport& report,
                                         const ExperimentConfig& cfg) {
  std::ostringstream csv;
  csv << "kappa,pair,test,iteration,p_value\n";
  Json cells = Json::array();
  for (const MotivationCell& c : report.cells) {
    for (std::size_t r = 0; r < c.p_values.size(); ++r) {
      csv << FormatDouble(c.kappa) << ',' << PairName(c.pair) << ',' << TestName(c.test) << ','
          << r << ',' << FormatDouble(c.p_values[r]) << '\n';
    }
    Json jc;
    jc["kappa"] = c.kappa;
    jc["pair"] = PairName(c.pair);
    jc["test"] = TestName(c.test);
    jc["p_values"] = c.p_values;
    jc["summary"] = BoxplotToJson(c.summary);
    cells.push_back(std::move(jc));
  }
  Json j;
  j["config"] = ExperimentConfigToJson(cfg);
  j["train_accuracy"] = report.train_accuracy;
  j["test_accuracy"] = report.test_accuracy;
  j["cells"] = std::move(cells);
  const std::string csv_path = PathIn(cfg, "motivation.csv");
  const std::string json_path = PathIn(cfg, "motivation.json");
  WriteTextFile(csv_path, csv.str());
  WriteJsonFile(json_path, j);
  return {csv_path, json_path};
}

Json MiaReportToJson(const MiaReport& report) {
  Json j;
  Json per = Json::object();
  for (std::size_t k = 0; k < report.strategies.size(); ++k) {
    per[MiaStrategyName(report.strategies[k])] = EvalReportToJson(report.reports[k]);
  }
  j["reports"] = std::move(per);
  j["n_samples"] = report.samples.size();
  j["n_not_fooled"] = report.n_not_fooled;
  j["train_accuracy"] = report.train_accuracy;
  j["test_accuracy"] = report.test_accuracy;
  return j;
}

std::string MiaScoresCsv(const MiaReport& report) {
  std::ostringstream csv;
  csv << "sample_id,member,strategy,score\n";
  for (const MiaSampleScore& s : report.samples) {
    for (std::size_t k = 0; k < report.strategies.size(); ++k) {
      csv << s.sample_id << ',' << (s.member ? 1 : 0) << ','
          << MiaStrategyName(report.strategies[k]) << ',' << FormatDouble(s.scores[k]) << '\n';
    }
  }
  return csv.str();
}

std::vector<std::string> WriteMia(const MiaReport& report, const ExperimentConfig& cfg,
                                  const std::string& json_path, const std::string& csv_path) {
  for (const std::string& p : {json_path, csv_path}) {
    const auto parent = std::filesystem::path(p).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
  }
  Json j = MiaReportToJson(report);
  j["config"] = ExperimentConfigToJson(cfg);
  j["scores_csv"] = std::filesystem::path(csv_path).filename().string();
  WriteJsonFile(json_path, j);
  WriteTextFile(csv_path, MiaScoresCsv(report));
  return {json_path, csv_path};
}

std::vector<std::string> WriteDefense(const DefenseSweepReport& report,
                                      const ExperimentConfig& cfg) {
  Json cells = Json::array();
  std::ostringstream csv;
  csv << "zeta,epoch,train_loss,val_loss,val_accuracy\n";
  for (const DefenseCell& c : report.cells) {
    Json jc;
    jc["zeta"] = c.zeta;
    jc["stopped_early"] = c.stopped_early;
    jc["train_accuracy"] = c.train_accuracy;
    jc["val_accuracy"] = c.val_accuracy;
    Json hist = Json::array();
    for (const EpochRecord& r : c.history) {
      hist.push_back(EpochRecordToJson(r));
      csv << FormatDouble(c.zeta) << ',' << r.epoch << ',' << FormatDouble(r.train_loss) << ','
          << FormatDouble(r.val_loss) << ',' << FormatDouble(r.val_accuracy) << '\n';
    }
    jc["epochs"] = std::move(hist);
    jc["excess"] = ExcessReportToJson(c.excess);
    if (c.mia) jc["mia"] = MiaReportToJson(*c.mia);
    cells.push_back(std::move(jc));
  }
  Json j;
  j["config"] = ExperimentConfigToJson(cfg);
  j["cells"] = std::move(cells);
  const std::string json_path = PathIn(cfg, "defense.json");
  const std::string csv_path = PathIn(cfg, "defense_epochs.csv");
  WriteJsonFile(json_path, j);
  WriteTextFile(csv_path, csv.str());
  return {json_path, csv_path};
}

std::vector<std::string> WriteMinimality(const MinimalityCurve& curve,
                                         const ExperimentConfig& cfg) {
  std::ostringstream csv;
  csv << "k,fraction,minimal_ratio,heuristic_ratio\n";
  for (std::size_t k = 0; k <= curve.n_intervals; ++k) {
    csv << k << ','
        << FormatDouble(static_cast<double>(k) / static_cast<double>(curve.n_intervals)) << ','
        << FormatDouble(curve.minimal_ratio[k]) << ',' << FormatDouble(curve.heuristic_ratio[k])
        << '\n';
  }
  Json j;
  j["config"] = ExperimentConfigToJson(cfg);
  j["n_samples"] = curve.n_samples;
  j["n_both_fooled"] = curve.n_both_fooled;
  j["minimal_success_rate"] = curve.minimal_success_rate;
  j["heuristic_success_rate"] = curve.heuristic_success_rate;
  j["minimal_median_norm"] = curve.minimal_median_norm;
  j["heuristic_median_norm"] = curve.heuristic_median_norm;
  j["minimal_ratio"] = curve.minimal_ratio;
  j["heuristic_ratio"] = curve.heuristic_ratio;
  const std::string json_path = PathIn(cfg, "minimality.json");
  const std::string csv_path = PathIn(cfg, "minimality.csv");
  WriteJsonFile(json_path, j);
  WriteTextFile(csv_path, csv.str());
  return {json_path, csv_path};
}

}  // namespace miabench
