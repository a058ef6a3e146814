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

// Batched experiments over synthetic populations: parameter sweeps with
// confidence intervals, and the budget-search and thread-scaling benchmarks.

#ifndef SENSEBID_EXPERIMENT_HPP_
#define SENSEBID_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensebid/hvm.hpp"
#include "sensebid/model.hpp"
#include "sensebid/simulator.hpp"

namespace sensebid {

// Largest population for which POV is computed against the exact optimum.
inline constexpr std::size_t kMaxPovBidders = 20;

enum class Mechanism { kTvm, kHvm, kGreedy, kGreedyClamped, kRandom };

const char* to_string(Mechanism mechanism);
// Accepts tvm, hvm, greedy, greedy_clamped and random.
std::optional<Mechanism> parse_mechanism(const std::string& name);

struct MechanismRun {
  AuctionOutcome outcome;
  std::optional<SearchLog> search_log;  // hvm only
  std::size_t tvm_evaluations = 0;
};

// `seed` drives random selection only; `theta` the greedy baselines.
MechanismRun run_mechanism(const AuctionInstance& instance, Mechanism mechanism,
                           std::size_t jobs, std::uint64_t seed, double theta = 1.0);

enum class SweepAxis { kBudget, kTfp, kBidders };

const char* to_string(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(const std::string& name);

struct ExperimentConfig {
  PopulationConfig population{.bidder_count = 20};
  SweepAxis sweep = SweepAxis::kBudget;
  std::vector<double> points = {1.0, 2.0, 4.0, 8.0};
  std::vector<Mechanism> mechanisms = {Mechanism::kTvm, Mechanism::kHvm};
  std::size_t repetitions = 100;
  double budget = 2.0;  // when not swept
  double tfp = 0.0;     // when not swept
  double theta = 1.0;
  std::uint64_t seed = 0;
  // Worker threads; repetitions are spread over them.
  std::size_t jobs = 1;
};

// Throws InputError on unknown keys or values of the wrong type. Keys:
// the PopulationConfig fields (rng_seed excluded) plus sweep, points,
// mechanisms, repetitions, budget, tfp, theta and seed.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
void validate_experiment_config(const ExperimentConfig& config);

struct Stat {
  double mean = 0.0;
  double half_width = 0.0;  // 95% Student-t; 0 with fewer than 2 samples
};

Stat summarize(std::span<const double> samples);

struct MetricsRow {
  double x = 0.0;
  Mechanism mechanism = Mechanism::kTvm;
  std::size_t repetitions = 0;
  Stat ov;
  std::optional<Stat> pov;  // populations of at most kMaxPovBidders
  // Obtained value over the value covered by every bidder together; the
  // normalizer used where the optimum is out of reach.
  Stat nov;
  Stat realized;            // obtained value after task failures
  Stat payments;
  Stat winners;
  Stat tvm_evaluations;
  double wall_time = 0.0;  // mean seconds per run
};

struct MetricsReport {
  SweepAxis sweep = SweepAxis::kBudget;
  std::vector<MetricsRow> rows;  // point-major, mechanisms in config order
};

// Repetition r draws its population from derive_seed(seed, r); every point
// and mechanism of that repetition sees the same population and the same
// failure draws, so comparisons are paired.
MetricsReport run_experiment(const ExperimentConfig& config);

// Wall time columns are the only part that differs between reruns.
void write_metrics_csv(std::ostream& out, const MetricsReport& report);
nlohmann::json metrics_to_json(const MetricsReport& report);

struct BenchConfig {
  PopulationConfig population;
  std::vector<std::size_t> bidder_counts = {100, 200, 300, 400, 500,
                                            600, 700, 800, 900, 1000};
  std::size_t instances_per_count = 1;
  double budget = 50.0;
  std::vector<std::size_t> jobs_list = {1, 2, 4};
  std::size_t scaling_bidders = 1000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;  // threads inside each TVM run of the search rows
};

struct SearchBenchRow {
  std::size_t bidders = 0;
  std::uint64_t seed = 0;
  std::size_t binary_evaluations = 0;
  std::size_t hvm_evaluations = 0;
  double binary_time = 0.0;
  double hvm_time = 0.0;
  // Times divided by the binary time of the first row.
  double binary_normalized = 0.0;
  double hvm_normalized = 0.0;
};

struct ScalingRow {
  std::size_t jobs = 0;
  double wall_time = 0.0;
  bool same_outcome = true;  // equal to the first jobs value's outcome
};

struct BenchReport {
  std::vector<SearchBenchRow> search;
  std::vector<ScalingRow> scaling;
  double hvm_not_worse_share = 0.0;  // rows with hvm <= binary evaluations
  double mean_probe_reduction = 0.0;  // mean of 1 - hvm / binary
};

BenchReport run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const BenchReport& report);
nlohmann::json bench_to_json(const BenchReport& report);

}  // namespace sensebid

#endif  // SENSEBID_EXPERIMENT_HPP_
