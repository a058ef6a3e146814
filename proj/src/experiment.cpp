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

#include "sensebid/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "sensebid/baselines.hpp"
#include "sensebid/io.hpp"
#include "sensebid/oracle.hpp"
#include "sensebid/parallel.hpp"
#include "sensebid/seeds.hpp"
#include "sensebid/simulator.hpp"
#include "sensebid/tvm.hpp"

namespace sensebid {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Stream tags under a repetition's population seed.
constexpr std::uint64_t kFailureStream = 1;
constexpr std::uint64_t kRandomStream = 2;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Shortest decimal form that reads back to the same double.
std::string Num(double value) { return json(value).dump(); }

template <typename T>
T Get(const json& doc, const char* key, const char* kind) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config: '") + key + "' must be " + kind);
  }
}

}  // namespace

const char* to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kTvm:
      return "tvm";
    case Mechanism::kHvm:
      return "hvm";
    case Mechanism::kGreedy:
      return "greedy";
    case Mechanism::kGreedyClamped:
      return "greedy_clamped";
    case Mechanism::kRandom:
      return "random";
  }
  return "?";
}

std::optional<Mechanism> parse_mechanism(const std::string& name) {
  for (auto m : {Mechanism::kTvm, Mechanism::kHvm, Mechanism::kGreedy,
                 Mechanism::kGreedyClamped, Mechanism::kRandom}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBudget:
      return "budget";
    case SweepAxis::kTfp:
      return "tfp";
    case SweepAxis::kBidders:
      return "bidders";
  }
  return "?";
}

std::optional<SweepAxis> parse_sweep_axis(const std::string& name) {
  for (auto a : {SweepAxis::kBudget, SweepAxis::kTfp, SweepAxis::kBidders}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

MechanismRun run_mechanism(const AuctionInstance& instance, Mechanism mechanism,
                           std::size_t jobs, std::uint64_t seed, double theta) {
  MechanismRun run;
  switch (mechanism) {
    case Mechanism::kTvm:
      run.outcome = tvm_run(instance, jobs);
      run.tvm_evaluations = 1;
      break;
    case Mechanism::kHvm: {
      SearchResult result = hvm_run(instance, jobs);
      run.outcome = std::move(result.outcome);
      run.tvm_evaluations = result.log.tvm_evaluations;
      run.search_log = std::move(result.log);
      break;
    }
    case Mechanism::kGreedy:
      run.outcome = greedy_bid_threshold(instance, jobs, {.theta = theta});
      break;
    case Mechanism::kGreedyClamped:
      run.outcome =
          greedy_bid_threshold(instance, jobs, {.theta = theta, .clamp_to_budget = true});
      break;
    case Mechanism::kRandom:
      run.outcome = random_selection(instance, seed);
      break;
  }
  return run;
}

ExperimentConfig experiment_config_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("config: expected an object");
  static const std::set<std::string> kKeys = {
      "sectors",      "timesteps", "bidder_count", "trip_duration_mean", "bid_gap_mean",
      "bid_mean",     "bid_sd",    "position_sigma", "sweep",            "points",
      "mechanisms",   "repetitions", "budget",     "tfp",                "theta",
      "seed"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) throw InputError("config: unknown key '" + key + "'");
  }
  ExperimentConfig config;
  PopulationConfig& pop = config.population;
  const char* count = "a non-negative integer";
  const char* real = "a number";
  if (doc.contains("sectors")) pop.sectors = Get<std::size_t>(doc, "sectors", count);
  if (doc.contains("timesteps")) pop.timesteps = Get<std::size_t>(doc, "timesteps", count);
  if (doc.contains("bidder_count")) {
    pop.bidder_count = Get<std::size_t>(doc, "bidder_count", count);
  }
  if (doc.contains("trip_duration_mean")) {
    pop.trip_duration_mean = Get<double>(doc, "trip_duration_mean", real);
  }
  if (doc.contains("bid_gap_mean")) pop.bid_gap_mean = Get<double>(doc, "bid_gap_mean", real);
  if (doc.contains("bid_mean")) pop.bid_mean = Get<double>(doc, "bid_mean", real);
  if (doc.contains("bid_sd")) pop.bid_sd = Get<double>(doc, "bid_sd", real);
  if (doc.contains("position_sigma")) {
    pop.position_sigma = Get<double>(doc, "position_sigma", real);
  }
  if (doc.contains("sweep")) {
    const auto axis = parse_sweep_axis(Get<std::string>(doc, "sweep", "a string"));
    if (!axis) throw InputError("config: 'sweep' must be budget, tfp or bidders");
    config.sweep = *axis;
  }
  if (doc.contains("points")) {
    config.points = Get<std::vector<double>>(doc, "points", "an array of numbers");
  }
  if (doc.contains("mechanisms")) {
    config.mechanisms.clear();
    for (const auto& name :
         Get<std::vector<std::string>>(doc, "mechanisms", "an array of strings")) {
      const auto mechanism = parse_mechanism(name);
      if (!mechanism) throw InputError("config: unknown mechanism '" + name + "'");
      config.mechanisms.push_back(*mechanism);
    }
  }
  if (doc.contains("repetitions")) {
    config.repetitions = Get<std::size_t>(doc, "repetitions", count);
  }
  if (doc.contains("budget")) config.budget = Get<double>(doc, "budget", real);
  if (doc.contains("tfp")) config.tfp = Get<double>(doc, "tfp", real);
  if (doc.contains("theta")) config.theta = Get<double>(doc, "theta", real);
  if (doc.contains("seed")) config.seed = Get<std::uint64_t>(doc, "seed", count);
  return config;
}

void validate_experiment_config(const ExperimentConfig& config) {
  validate_config(config.population);
  if (config.repetitions == 0) throw InputError("config: repetitions must be >= 1");
  if (config.points.empty()) throw InputError("config: points must not be empty");
  if (config.mechanisms.empty()) throw InputError("config: mechanisms must not be empty");
  if (!(config.theta >= 0.0)) throw InputError("config: theta must be >= 0");
  const bool budget_swept = config.sweep == SweepAxis::kBudget;
  const bool tfp_swept = config.sweep == SweepAxis::kTfp;
  if (!budget_swept && !(config.budget > 0.0)) {
    throw InputError("config: budget must be positive");
  }
  if (!tfp_swept && !(config.tfp >= 0.0 && config.tfp <= 1.0)) {
    throw InputError("config: tfp must be in [0, 1]");
  }
  for (double x : config.points) {
    if (budget_swept && !(x > 0.0)) throw InputError("config: budgets must be positive");
    if (tfp_swept && !(x >= 0.0 && x <= 1.0)) {
      throw InputError("config: tfp points must be in [0, 1]");
    }
    if (config.sweep == SweepAxis::kBidders && !(x >= 1.0 && x == std::floor(x))) {
      throw InputError("config: bidder counts must be positive integers");
    }
  }
}

Stat summarize(std::span<const double> samples) {
  Stat stat;
  const std::size_t n = samples.size();
  if (n == 0) return stat;
  double sum = 0.0;
  for (double x : samples) sum += x;
  stat.mean = sum / static_cast<double>(n);
  if (n < 2) return stat;
  double squares = 0.0;
  for (double x : samples) squares += (x - stat.mean) * (x - stat.mean);
  const double sd = std::sqrt(squares / static_cast<double>(n - 1));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  stat.half_width = t * sd / std::sqrt(static_cast<double>(n));
  return stat;
}

MetricsReport run_experiment(const ExperimentConfig& config) {
  validate_experiment_config(config);
  const std::size_t points = config.points.size();
  const std::size_t mechanisms = config.mechanisms.size();
  const std::size_t reps = config.repetitions;

  struct Sample {
    double ov = 0.0;
    double pov = -1.0;  // negative when not computed
    double nov = 0.0;
    double realized = 0.0;
    double payments = 0.0;
    double winners = 0.0;
    double evaluations = 0.0;
    double seconds = 0.0;
  };
  // samples[(point * mechanisms + mechanism) * reps + rep]
  std::vector<Sample> samples(points * mechanisms * reps);

  parallel_for(reps, config.jobs, [&](std::size_t rep) {
    const std::uint64_t pop_seed = derive_seed(config.seed, rep);
    PopulationConfig pop_config = config.population;
    pop_config.rng_seed = pop_seed;
    std::optional<Population> shared;
    if (config.sweep != SweepAxis::kBidders) shared = generate_population(pop_config);

    for (std::size_t p = 0; p < points; ++p) {
      const double x = config.points[p];
      double budget = config.budget;
      double tfp = config.tfp;
      std::optional<Population> own;
      if (config.sweep == SweepAxis::kBudget) budget = x;
      if (config.sweep == SweepAxis::kTfp) tfp = x;
      if (config.sweep == SweepAxis::kBidders) {
        pop_config.bidder_count = static_cast<std::size_t>(x);
        own = generate_population(pop_config);
      }
      const AuctionInstance instance = make_instance(own ? *own : *shared, budget);
      std::optional<double> opt;
      if (instance.size() <= kMaxPovBidders) {
        opt = brute_force_optimal(instance).opt_value;
      }
      std::vector<ParticipantId> everyone;
      for (const auto& bidder : instance.bidders) everyone.push_back(bidder.id());
      const double reachable = value_of(instance, everyone);
      for (std::size_t k = 0; k < mechanisms; ++k) {
        const auto start = Clock::now();
        const MechanismRun run =
            run_mechanism(instance, config.mechanisms[k], 1,
                          derive_seed(pop_seed, kRandomStream), config.theta);
        Sample& sample = samples[(p * mechanisms + k) * reps + rep];
        sample.seconds = Seconds(start);
        sample.ov = run.outcome.achieved_value;
        if (opt) sample.pov = *opt > 0.0 ? sample.ov / *opt : 1.0;
        sample.nov = reachable > 0.0 ? sample.ov / reachable : 1.0;
        sample.realized = simulate_execution(run.outcome, instance, tfp,
                                             derive_seed(pop_seed, kFailureStream));
        sample.payments = run.outcome.payments_total;
        sample.winners = static_cast<double>(run.outcome.winners.size());
        sample.evaluations = static_cast<double>(run.tvm_evaluations);
      }
    }
  });

  MetricsReport report;
  report.sweep = config.sweep;
  for (std::size_t p = 0; p < points; ++p) {
    for (std::size_t k = 0; k < mechanisms; ++k) {
      const Sample* cell = &samples[(p * mechanisms + k) * reps];
      auto column = [&](double Sample::*field) {
        std::vector<double> out(reps);
        for (std::size_t r = 0; r < reps; ++r) out[r] = cell[r].*field;
        return out;
      };
      MetricsRow row;
      row.x = config.points[p];
      row.mechanism = config.mechanisms[k];
      row.repetitions = reps;
      row.ov = summarize(column(&Sample::ov));
      if (cell[0].pov >= 0.0) row.pov = summarize(column(&Sample::pov));
      row.nov = summarize(column(&Sample::nov));
      row.realized = summarize(column(&Sample::realized));
      row.payments = summarize(column(&Sample::payments));
      row.winners = summarize(column(&Sample::winners));
      row.tvm_evaluations = summarize(column(&Sample::evaluations));
      row.wall_time = summarize(column(&Sample::seconds)).mean;
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_metrics_csv(std::ostream& out, const MetricsReport& report) {
  out << "sweep,x,mechanism,repetitions,ov_mean,ov_ci95,pov_mean,pov_ci95,"
         "nov_mean,nov_ci95,realized_mean,realized_ci95,payments_mean,payments_ci95,winners_mean,"
         "winners_ci95,tvm_evaluations_mean,tvm_evaluations_ci95,wall_time\n";
  for (const auto& row : report.rows) {
    auto stat = [&](const Stat& s) { out << ',' << Num(s.mean) << ',' << Num(s.half_width); };
    out << to_string(report.sweep) << ',' << Num(row.x) << ',' << to_string(row.mechanism)
        << ',' << row.repetitions;
    stat(row.ov);
    if (row.pov) {
      stat(*row.pov);
    } else {
      out << ",,";
    }
    stat(row.nov);
    stat(row.realized);
    stat(row.payments);
    stat(row.winners);
    stat(row.tvm_evaluations);
    out << ',' << Num(row.wall_time) << '\n';
  }
}

json metrics_to_json(const MetricsReport& report) {
  auto stat = [](const Stat& s) { return json{{"mean", s.mean}, {"ci95", s.half_width}}; };
  json rows = json::array();
  for (const auto& row : report.rows) {
    json entry = {{"x", row.x},
                  {"mechanism", to_string(row.mechanism)},
                  {"repetitions", row.repetitions},
                  {"ov", stat(row.ov)},
                  {"pov", row.pov ? stat(*row.pov) : json(nullptr)},
                  {"nov", stat(row.nov)},
                  {"realized", stat(row.realized)},
                  {"payments_total", stat(row.payments)},
                  {"winners_count", stat(row.winners)},
                  {"tvm_evaluations", stat(row.tvm_evaluations)},
                  {"wall_time", row.wall_time}};
    rows.push_back(std::move(entry));
  }
  return {{"sweep", to_string(report.sweep)}, {"rows", std::move(rows)}};
}

BenchReport run_bench(const BenchConfig& config) {
  validate_config(config.population);
  if (!(config.budget > 0.0)) throw InputError("bench: budget must be positive");
  BenchReport report;
  std::size_t index = 0;
  std::size_t not_worse = 0;
  double reduction = 0.0;
  for (auto count : config.bidder_counts) {
    for (std::size_t n = 0; n < config.instances_per_count; ++n, ++index) {
      PopulationConfig pop = config.population;
      pop.bidder_count = count;
      pop.rng_seed = derive_seed(config.seed, index);
      const AuctionInstance instance = make_instance(generate_population(pop), config.budget);
      SearchBenchRow row;
      row.bidders = count;
      row.seed = pop.rng_seed;
      auto start = Clock::now();
      row.binary_evaluations = binary_search_budget(instance, config.jobs).log.tvm_evaluations;
      row.binary_time = Seconds(start);
      start = Clock::now();
      row.hvm_evaluations = hvm_run(instance, config.jobs).log.tvm_evaluations;
      row.hvm_time = Seconds(start);
      if (row.hvm_evaluations <= row.binary_evaluations) ++not_worse;
      reduction += 1.0 - static_cast<double>(row.hvm_evaluations) /
                             static_cast<double>(row.binary_evaluations);
      report.search.push_back(row);
    }
  }
  if (!report.search.empty()) {
    const double unit = report.search.front().binary_time;
    for (auto& row : report.search) {
      row.binary_normalized = unit > 0.0 ? row.binary_time / unit : 0.0;
      row.hvm_normalized = unit > 0.0 ? row.hvm_time / unit : 0.0;
    }
    const auto rows = static_cast<double>(report.search.size());
    report.hvm_not_worse_share = static_cast<double>(not_worse) / rows;
    report.mean_probe_reduction = reduction / rows;
  }

  if (!config.jobs_list.empty() && config.scaling_bidders > 0) {
    PopulationConfig pop = config.population;
    pop.bidder_count = config.scaling_bidders;
    pop.rng_seed = derive_seed(config.seed, index);
    const AuctionInstance instance = make_instance(generate_population(pop), config.budget);
    std::optional<AuctionOutcome> reference;
    for (auto jobs : config.jobs_list) {
      const auto start = Clock::now();
      AuctionOutcome outcome = hvm_run(instance, jobs).outcome;
      ScalingRow row{jobs, Seconds(start), true};
      if (reference) {
        row.same_outcome = outcome == *reference;
      } else {
        reference = std::move(outcome);
      }
      report.scaling.push_back(row);
    }
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "bidders,seed,binary_evaluations,hvm_evaluations,binary_time,hvm_time,"
         "binary_normalized,hvm_normalized\n";
  for (const auto& row : report.search) {
    out << row.bidders << ',' << row.seed << ',' << row.binary_evaluations << ','
        << row.hvm_evaluations << ',' << Num(row.binary_time) << ',' << Num(row.hvm_time)
        << ',' << Num(row.binary_normalized) << ',' << Num(row.hvm_normalized) << '\n';
  }
  out << "\njobs,wall_time,same_outcome\n";
  for (const auto& row : report.scaling) {
    out << row.jobs << ',' << Num(row.wall_time) << ',' << (row.same_outcome ? 1 : 0) << '\n';
  }
}

json bench_to_json(const BenchReport& report) {
  json search = json::array();
  for (const auto& row : report.search) {
    search.push_back({{"bidders", row.bidders},
                      {"seed", row.seed},
                      {"binary_evaluations", row.binary_evaluations},
                      {"hvm_evaluations", row.hvm_evaluations},
                      {"binary_time", row.binary_time},
                      {"hvm_time", row.hvm_time},
                      {"binary_normalized", row.binary_normalized},
                      {"hvm_normalized", row.hvm_normalized}});
  }
  json scaling = json::array();
  for (const auto& row : report.scaling) {
    scaling.push_back(
        {{"jobs", row.jobs}, {"wall_time", row.wall_time}, {"same_outcome", row.same_outcome}});
  }
  return {{"search", std::move(search)},
          {"scaling", std::move(scaling)},
          {"hvm_not_worse_share", report.hvm_not_worse_share},
          {"mean_probe_reduction", report.mean_probe_reduction}};
}

}  // namespace sensebid
