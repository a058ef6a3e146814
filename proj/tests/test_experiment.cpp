// Copyright 2026 The sensebid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <sstream>
#include <vector>

#include "sensebid/experiment.hpp"
#include "sensebid/io.hpp"

namespace sensebid {
namespace {

using nlohmann::json;

ExperimentConfig SmallConfig() {
  ExperimentConfig config;
  config.population.sectors = 100;
  config.population.bidder_count = 10;
  config.repetitions = 12;
  config.seed = 3;
  return config;
}

const MetricsRow& Row(const MetricsReport& report, double x, Mechanism mechanism) {
  for (const auto& row : report.rows) {
    if (row.x == x && row.mechanism == mechanism) return row;
  }
  FAIL("row not found");
  return report.rows.front();
}

TEST_CASE("summarize uses the Student-t quantile") {
  const std::vector<double> one = {4.0};
  CHECK(summarize(one).mean == 4.0);
  CHECK(summarize(one).half_width == 0.0);
  const std::vector<double> samples = {1.0, 2.0, 3.0, 4.0};
  const Stat stat = summarize(samples);
  CHECK(stat.mean == doctest::Approx(2.5));
  // t_{0.975,3} = 3.182446, sd = 1.290994.
  CHECK(stat.half_width == doctest::Approx(3.182446 * 1.290994 / 2.0).epsilon(1e-6));
  CHECK(summarize(std::vector<double>{}).mean == 0.0);
}

TEST_CASE("mechanism names round trip") {
  for (auto mechanism : {Mechanism::kTvm, Mechanism::kHvm, Mechanism::kGreedy,
                         Mechanism::kGreedyClamped, Mechanism::kRandom}) {
    CHECK(parse_mechanism(to_string(mechanism)) == mechanism);
  }
  CHECK_FALSE(parse_mechanism("vcg").has_value());
  CHECK(parse_sweep_axis("tfp") == SweepAxis::kTfp);
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  const ExperimentConfig config = experiment_config_from_json(json::parse(
      R"({"bidder_count": 7, "sweep": "tfp", "points": [0, 0.5], "mechanisms": ["hvm"],
          "repetitions": 3, "seed": 11})"));
  CHECK(config.population.bidder_count == 7);
  CHECK(config.sweep == SweepAxis::kTfp);
  CHECK(config.mechanisms == std::vector<Mechanism>{Mechanism::kHvm});
  CHECK(config.seed == 11);
  CHECK_THROWS_AS(experiment_config_from_json(json::parse(R"({"bogus": 1})")), InputError);
  CHECK_THROWS_AS(experiment_config_from_json(json::parse(R"({"points": "x"})")), InputError);
  CHECK_THROWS_AS(experiment_config_from_json(json::parse(R"({"mechanisms": ["vcg"]})")),
                  InputError);
  CHECK_THROWS_AS(validate_experiment_config(experiment_config_from_json(
                      json::parse(R"({"repetitions": 0})"))),
                  InputError);
}

TEST_CASE("HVM is at least TVM at every budget point") {
  ExperimentConfig config = SmallConfig();
  config.points = {0.5, 1.0, 2.0, 4.0};
  const MetricsReport report = run_experiment(config);
  REQUIRE(report.rows.size() == 8);
  for (double x : config.points) {
    const MetricsRow& tvm = Row(report, x, Mechanism::kTvm);
    const MetricsRow& hvm = Row(report, x, Mechanism::kHvm);
    CHECK(hvm.ov.mean >= tvm.ov.mean - 1e-12);
    REQUIRE(hvm.pov.has_value());
    CHECK(hvm.pov->mean <= 1.0 + 1e-12);
    CHECK(hvm.payments.mean <= x + 1e-9);
    CHECK(tvm.tvm_evaluations.mean == 1.0);
  }
}

TEST_CASE("realized value falls as task failures grow") {
  ExperimentConfig config = SmallConfig();
  config.sweep = SweepAxis::kTfp;
  config.points = {0.0, 0.25, 0.5, 0.75, 1.0};
  config.mechanisms = {Mechanism::kHvm};
  const MetricsReport report = run_experiment(config);
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    CHECK(report.rows[k].realized.mean <= report.rows[k - 1].realized.mean + 1e-12);
  }
  CHECK(report.rows.front().realized.mean == doctest::Approx(report.rows.front().ov.mean));
  CHECK(report.rows.back().realized.mean == 0.0);
}

TEST_CASE("bidder sweep changes the population size") {
  ExperimentConfig config = SmallConfig();
  config.sweep = SweepAxis::kBidders;
  config.points = {5, 30};
  config.mechanisms = {Mechanism::kTvm, Mechanism::kRandom};
  const MetricsReport report = run_experiment(config);
  CHECK(Row(report, 5, Mechanism::kTvm).pov.has_value());
  CHECK_FALSE(Row(report, 30, Mechanism::kTvm).pov.has_value());
  for (const auto& row : report.rows) {
    CHECK(row.nov.mean > 0.0);
    CHECK(row.nov.mean <= 1.0 + 1e-12);
  }
  // The optimum never exceeds the value of every bidder together.
  CHECK(Row(report, 5, Mechanism::kTvm).pov->mean >=
        Row(report, 5, Mechanism::kTvm).nov.mean - 1e-12);
}

std::string WithoutWallTime(const MetricsReport& report) {
  MetricsReport copy = report;
  for (auto& row : copy.rows) row.wall_time = 0.0;
  std::ostringstream out;
  write_metrics_csv(out, copy);
  return out.str();
}

TEST_CASE("results do not depend on the thread count") {
  ExperimentConfig config = SmallConfig();
  config.points = {1.0, 3.0};
  config.mechanisms = {Mechanism::kTvm, Mechanism::kHvm, Mechanism::kGreedyClamped,
                       Mechanism::kRandom};
  config.jobs = 1;
  const std::string serial = WithoutWallTime(run_experiment(config));
  config.jobs = 4;
  CHECK(WithoutWallTime(run_experiment(config)) == serial);
}

TEST_CASE("metrics CSV header and JSON shape") {
  ExperimentConfig config = SmallConfig();
  config.repetitions = 2;
  config.points = {1.0};
  const MetricsReport report = run_experiment(config);
  std::ostringstream out;
  write_metrics_csv(out, report);
  std::string header;
  std::getline(std::istringstream(out.str()) >> std::ws, header);
  CHECK(header.rfind("sweep,x,mechanism,repetitions,ov_mean", 0) == 0);
  const json doc = metrics_to_json(report);
  CHECK(doc["rows"].size() == 2);
  CHECK(doc["sweep"] == "budget");
}

TEST_CASE("bench reports probe counts and scaling") {
  BenchConfig config;
  config.population.sectors = 100;
  config.bidder_counts = {40, 80};
  config.budget = 10.0;
  config.jobs_list = {1, 2};
  config.scaling_bidders = 60;
  const BenchReport report = run_bench(config);
  REQUIRE(report.search.size() == 2);
  CHECK(report.search.front().binary_normalized == doctest::Approx(1.0));
  REQUIRE(report.scaling.size() == 2);
  for (const auto& row : report.scaling) CHECK(row.same_outcome);
  CHECK(report.hvm_not_worse_share >= 0.0);
  CHECK(report.hvm_not_worse_share <= 1.0);
}

}  // namespace
}  // namespace sensebid
