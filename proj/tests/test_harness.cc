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
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "miabench/errors.h"
#include "miabench/harness.h"

using namespace miabench;

namespace {

ExperimentConfig Tiny() {
  ExperimentConfig cfg = MiaDefaults();
  cfg.gen.n_samples = 40;
  cfg.gen.dim = 3;
  cfg.model.hidden = {12};
  cfg.model.train.iterations = 300;
  cfg.model.train.batch_size = 8;
  cfg.mia.pool_size = 20;
  cfg.mia.path_samples = 10;
  cfg.repeats = 2;
  cfg.noise.kappas = {0.0, 0.2};
  cfg.bivariate.permutations = 30;
  cfg.defense.zetas = {0.0, 0.3};
  cfg.seed = 5;
  return cfg;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config JSON round-trips and merges over a preset") {
  ExperimentConfig cfg = Tiny();
  cfg.noise.kind = NoiseKind::kIsotropic;
  cfg.defense.schedule = Schedule::Ramp(0.05);
  cfg.mia.strategies = {MiaStrategy::kDistanceL2, MiaStrategy::kArcLength};
  const Json j = ExperimentConfigToJson(cfg);
  const ExperimentConfig back = ExperimentConfigFromJson(j, MotivationDefaults());
  CHECK(ExperimentConfigToJson(back) == j);

  Json partial = Json::parse(R"({"repeats": 3, "gen": {"dim": 5}, "mia": {"path_samples": 7}})");
  const ExperimentConfig merged = ExperimentConfigFromJson(partial, MiaDefaults());
  CHECK(merged.repeats == 3);
  CHECK(merged.gen.dim == 5);
  CHECK(merged.gen.n_samples == MiaDefaults().gen.n_samples);
  CHECK(merged.mia.path_samples == 7);
  CHECK(merged.model.hidden == MiaDefaults().model.hidden);
}

TEST_CASE("bad configs are config errors") {
  CHECK_THROWS_AS(ExperimentConfigFromJson(Json::parse(R"({"repeats": "x"})"), MiaDefaults()),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson(Json::parse(R"({"noise": {"kind": "pink"}})"),
                                           MiaDefaults()),
                  ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson(Json::parse("[1, 2]"), MiaDefaults()), ConfigError);
  CHECK_THROWS_AS(ExperimentConfigFromJson(Json::parse(R"({"sed": 1})"), MiaDefaults()), ConfigError);
  CHECK_THROWS_AS(
      ExperimentConfigFromJson(Json::parse(R"({"mia": {"attack": {"tol": 1}}})"), MiaDefaults()),
      ConfigError);
  ExperimentConfig cfg = Tiny();
  cfg.repeats = 0;
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = Tiny();
  cfg.noise.kappas.clear();
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
  cfg = Tiny();
  cfg.defense.zetas.clear();
  CHECK_THROWS_AS(cfg.Validate(), ConfigError);
}

TEST_CASE("motivation at kappa zero gives p-values of one") {
  ExperimentConfig cfg = MotivationDefaults();
  cfg.repeats = 1;
  cfg.noise.kappas = {0.0};
  const auto start = std::chrono::steady_clock::now();
  const MotivationReport r = RunMotivation(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 60.0);
  REQUIRE(r.cells.size() == 4);
  for (const MotivationCell& c : r.cells) {
    REQUIRE(c.p_values.size() == 1);
    CHECK(c.p_values[0] == 1.0);
  }
  CHECK(r.Cell(0, PairKind::kTest, TestKind::kInputBivariate).pair == PairKind::kTest);
}

TEST_CASE("motivation cells are ordered and valued in the unit interval") {
  ExperimentConfig cfg = Tiny();
  cfg.gen.dim = 2;
  const MotivationReport r = RunMotivation(cfg);
  REQUIRE(r.cells.size() == 8);
  const MotivationCell& c = r.Cell(1, PairKind::kTrain, TestKind::kScoreUnivariate);
  CHECK(c.kappa == 0.2);
  CHECK(c.test == TestKind::kScoreUnivariate);
  for (const MotivationCell& cell : r.cells) {
    CHECK(cell.p_values.size() == 2);
    for (double p : cell.p_values) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  ExperimentConfig threaded = cfg;
  threaded.threads = 3;
  const MotivationReport t = RunMotivation(threaded);
  for (std::size_t i = 0; i < r.cells.size(); ++i) CHECK(t.cells[i].p_values == r.cells[i].p_values);
  cfg.gen.dim = 3;
  CHECK_THROWS_AS(RunMotivation(cfg), ConfigError);
}

TEST_CASE("MIA comparison uses a balanced pool and is deterministic") {
  const ExperimentConfig cfg = Tiny();
  const MiaReport a = RunMiaComparison(cfg);
  const MiaReport b = RunMiaComparison(cfg);
  REQUIRE(a.samples.size() == 40);
  std::size_t members = 0;
  for (const MiaSampleScore& s : a.samples) members += s.member ? 1 : 0;
  CHECK(members == 20);
  CHECK(a.reports.size() == 4);
  for (std::size_t k = 0; k < a.reports.size(); ++k) {
    CHECK(a.reports[k].auc == b.reports[k].auc);
    CHECK(a.reports[k].n_members == 20);
  }
  CHECK(MiaScoresCsv(a) == MiaScoresCsv(b));
  CHECK_THROWS_AS(a.For(MiaStrategy::kCustom), DomainError);
}

TEST_CASE("a memorizing model exposes its training points") {
  ExperimentConfig cfg = MiaDefaults();
  cfg.gen.n_samples = 8;
  cfg.gen.n_test = 200;
  cfg.gen.n_classes = 4;
  cfg.gen.dim = 10;
  cfg.gen.cluster_std = 3.0;
  cfg.model.hidden = {256, 256};
  cfg.model.train.batch_size = 8;
  cfg.model.train.iterations = 3000;
  cfg.mia.pool_size = 200;
  const MiaReport r = RunMiaComparison(cfg);
  CHECK(r.train_accuracy == 1.0);
  CHECK(r.For(MiaStrategy::kArcLength).auc > 0.9);
}

TEST_CASE("defense sweep: zero noise matches undefended training") {
  ExperimentConfig cfg = Tiny();
  const DefenseSweepReport r = RunDefenseSweep(cfg);
  REQUIRE(r.cells.size() == 2);
  const TrainedSetup base = PrepareRepeat(cfg, 0);
  CHECK(r.cells[0].train_accuracy == Accuracy(base.model, base.data.train));
  CHECK(r.cells[0].val_accuracy == Accuracy(base.model, base.data.test));
  CHECK(r.cells[0].excess.values == ExcessConfidence(base.model, base.data.train,
                                                     base.data.test).values);
  CHECK_FALSE(r.cells[0].mia.has_value());
  cfg.defense.run_mia = true;
  CHECK(RunDefenseSweep(cfg).cells[1].mia.has_value());
}

TEST_CASE("minimality curve endpoints") {
  ExperimentConfig cfg = Tiny();
  cfg.gen.dim = 2;
  const MinimalityCurve c = RunMinimalityCurve(cfg);
  REQUIRE(c.minimal_ratio.size() == cfg.mia.path_samples + 1);
  CHECK(c.minimal_ratio.front() == 1.0);
  CHECK(c.heuristic_ratio.front() == 1.0);
  CHECK(c.minimal_ratio.back() == doctest::Approx(1.0 - c.minimal_success_rate));
  CHECK(c.heuristic_ratio.back() == doctest::Approx(1.0 - c.heuristic_success_rate));
}

TEST_CASE("report writers are byte-stable") {
  ExperimentConfig cfg = Tiny();
  cfg.gen.dim = 2;
  const auto dir = std::filesystem::temp_directory_path() / "miabench_writer_test";
  std::filesystem::remove_all(dir);
  cfg.out_dir = (dir / "a").string();
  const auto first = WriteMinimality(RunMinimalityCurve(cfg), cfg);
  cfg.out_dir = (dir / "b").string();
  const auto second = WriteMinimality(RunMinimalityCurve(cfg), cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(std::filesystem::path(first[i]).filename() == std::filesystem::path(second[i]).filename());
    CHECK(Slurp(first[i]) == Slurp(second[i]));
  }
  std::filesystem::remove_all(dir);
}
