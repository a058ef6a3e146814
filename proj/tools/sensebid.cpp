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

// sensebid: run auctions, experiments, property checks and benchmarks.
//
// Exit codes: 0 success, 1 a hard property failed, 2 bad input.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sensebid/experiment.hpp"
#include "sensebid/fixtures.hpp"
#include "sensebid/io.hpp"
#include "sensebid/oracle.hpp"
#include "sensebid/parallel.hpp"
#include "sensebid/seeds.hpp"
#include "sensebid/simulator.hpp"

namespace {

using nlohmann::json;
using namespace sensebid;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

struct Globals {
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: command default
};

void Emit(const Globals& globals, const std::string& text) {
  if (globals.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(globals.out);
  if (!file) throw InputError("cannot write " + globals.out);
  file << text;
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

struct RunArgs {
  std::string instance;
  std::string mechanism = "tvm";
  bool emit_search_log = false;
  double theta = 1.0;
};

int Run(const Globals& globals, const RunArgs& args) {
  const auto mechanism = parse_mechanism(args.mechanism);
  if (!mechanism) throw InputError("unknown mechanism '" + args.mechanism + "'");
  const AuctionInstance instance = read_instance_file(args.instance);
  const MechanismRun run =
      run_mechanism(instance, *mechanism, globals.jobs, globals.seed, args.theta);
  if (globals.format == "csv") {
    std::ostringstream csv;
    csv << "id,reward\n";
    for (auto id : run.outcome.winners) {
      csv << id << ',' << json(run.outcome.rewards.at(id)).dump() << '\n';
    }
    Emit(globals, csv.str());
    return kOk;
  }
  json doc = outcome_to_json(run.outcome);
  doc["mechanism"] = to_string(*mechanism);
  if (args.emit_search_log && run.search_log) {
    doc["search_log"] = search_log_to_json(*run.search_log);
  }
  Emit(globals, Dump(doc));
  return kOk;
}

int Experiment(const Globals& globals, const std::string& config_path) {
  const json doc = read_json_file(config_path);
  ExperimentConfig config = experiment_config_from_json(doc);
  config.jobs = globals.jobs;
  if (!doc.contains("seed")) config.seed = globals.seed;
  const MetricsReport report = run_experiment(config);
  if (globals.format == "json") {
    Emit(globals, Dump(metrics_to_json(report)));
  } else {
    std::ostringstream csv;
    write_metrics_csv(csv, report);
    Emit(globals, csv.str());
  }
  return kOk;
}

struct VerifyArgs {
  std::string instance;
  std::size_t random = 0;
  std::size_t sweep_grid = 50;
};

struct CheckTally {
  std::string name;
  bool hard = true;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::string first_failure;
};

int Verify(const Globals& globals, const VerifyArgs& args) {
  std::vector<AuctionInstance> instances;
  std::vector<std::string> labels;
  if (!args.instance.empty()) {
    instances.push_back(read_instance_file(args.instance));
    labels.push_back(args.instance);
  }
  for (std::size_t r = 0; r < args.random; ++r) {
    instances.push_back(random_instance(derive_seed(globals.seed, r)));
    labels.push_back("random#" + std::to_string(r));
  }
  if (instances.empty()) throw InputError("verify needs an instance file or --random N");

  BatteryOptions options;
  options.sweep_grid = args.sweep_grid;
  std::vector<PropertyReport> reports(instances.size());
  parallel_for(instances.size(), globals.jobs, [&](std::size_t n) {
    reports[n] = property_battery(instances[n], options);
  });

  std::vector<CheckTally> tallies;
  bool hard_failure = false;
  for (std::size_t n = 0; n < reports.size(); ++n) {
    hard_failure = hard_failure || reports[n].hard_failure();
    for (const auto& check : reports[n].checks) {
      auto it = std::find_if(tallies.begin(), tallies.end(),
                             [&](const CheckTally& t) { return t.name == check.name; });
      if (it == tallies.end()) {
        tallies.push_back({check.name, check.hard, 0, 0, 0, {}});
        it = tallies.end() - 1;
      }
      ++it->runs;
      if (check.skipped) ++it->skipped;
      if (!check.passed) {
        if (it->failures++ == 0) it->first_failure = labels[n] + ": " + check.detail;
      }
    }
  }

  json checks = json::array();
  for (const auto& t : tallies) {
    checks.push_back({{"name", t.name},
                      {"hard", t.hard},
                      {"informational", !t.hard},
                      {"instances", t.runs},
                      {"failures", t.failures},
                      {"skipped", t.skipped},
                      {"first_failure", t.first_failure}});
  }
  json doc = {{"instances", instances.size()},
              {"checks", checks},
              {"hard_failure", hard_failure}};
  if (instances.size() == 1) doc["report"] = property_report_to_json(reports.front());

  if (globals.format == "json") {
    Emit(globals, Dump(doc));
  } else if (globals.format == "csv") {
    std::ostringstream csv;
    csv << "name,hard,instances,failures,skipped\n";
    for (const auto& t : tallies) {
      csv << t.name << ',' << (t.hard ? 1 : 0) << ',' << t.runs << ',' << t.failures << ','
          << t.skipped << '\n';
    }
    Emit(globals, csv.str());
  } else {
    std::ostringstream table;
    table << std::left << std::setw(30) << "check" << std::setw(8) << "result"
          << "failures/instances\n";
    for (const auto& t : tallies) {
      std::string result = t.failures == 0 ? "pass" : "FAIL";
      if (t.skipped == t.runs) result = "skip";
      if (!t.hard) result = "info";
      table << std::setw(30) << t.name << std::setw(8) << result << t.failures << '/'
            << t.runs;
      if (t.skipped > 0) table << " (" << t.skipped << " skipped)";
      if (t.failures > 0) table << "  " << t.first_failure;
      table << '\n';
    }
    table << (hard_failure ? "hard property failure\n" : "all hard properties hold\n");
    std::cout << table.str();
    if (!globals.out.empty()) Emit(globals, Dump(doc));
  }
  return hard_failure ? kPropertyFailure : kOk;
}

int Bench(const Globals& globals, BenchConfig config) {
  config.seed = globals.seed;
  config.jobs = globals.jobs;
  const BenchReport report = run_bench(config);
  if (globals.format == "json") {
    Emit(globals, Dump(bench_to_json(report)));
  } else {
    std::ostringstream csv;
    write_bench_csv(csv, report);
    Emit(globals, csv.str());
  }
  std::cerr << "hvm <= binary evaluations on " << report.hvm_not_worse_share * 100.0
            << "% of rows, mean probe reduction " << report.mean_probe_reduction * 100.0
            << "%\n";
  return kOk;
}

struct GenerateArgs {
  PopulationConfig population;
  double budget = 2.0;
  bool four_sector = false;
  std::string trace;
  double sigma = 1.0;
  double bid = 0.5;
};

int Generate(const Globals& globals, GenerateArgs args) {
  AuctionInstance instance;
  if (args.four_sector) {
    instance = four_sector_example();
  } else if (!args.trace.empty()) {
    // Trace participants all bid the same amount; weights come from visits.
    const TraceFile trace = read_trace_file(args.trace);
    const GridSpec grid{args.population.sectors, args.population.timesteps};
    instance.grid = grid;
    instance.values = sector_weights_from_visits(trace, grid);
    for (auto& profile : ingest_trace(trace, grid, args.sigma)) {
      const ParticipantId id = profile.id();
      instance.bidders.push_back({Bid{id, args.bid, args.bid}, std::move(profile)});
    }
    instance.budget = args.budget;
    instance = validate_instance(std::move(instance));
  } else {
    args.population.rng_seed = globals.seed;
    instance = make_instance(generate_population(args.population), args.budget);
  }
  Emit(globals, Dump(instance_to_json(instance)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-feasible reverse auctions for mobile crowdsensing."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--jobs", globals.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", globals.seed, "Master seed");
  app.add_option("--out", globals.out, "Write output to this file instead of stdout");
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one mechanism on an instance file");
  run->add_option("instance", run_args.instance, "Instance JSON")->required();
  run->add_option("--mechanism", run_args.mechanism,
                  "tvm, hvm, greedy, greedy_clamped or random");
  run->add_flag("--emit-search-log", run_args.emit_search_log,
                "Include the budget search log (hvm)");
  run->add_option("--theta", run_args.theta, "Bid threshold scale of the greedy baselines");

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "Run a sweep from a config file");
  experiment->add_option("config", config_path, "Experiment config JSON")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check mechanism properties");
  verify->add_option("instance", verify_args.instance, "Instance JSON");
  verify->add_option("--random", verify_args.random, "Number of random instances");
  verify->add_option("--sweep-grid", verify_args.sweep_grid, "Misreports per bidder");

  BenchConfig bench_config;
  auto* bench = app.add_subcommand("bench", "HVM vs binary search and thread scaling");
  bench->add_option("--bidders", bench_config.bidder_counts, "Bidder counts");
  bench->add_option("--instances", bench_config.instances_per_count,
                    "Instances per bidder count");
  bench->add_option("--budget", bench_config.budget, "Budget");
  bench->add_option("--jobs-list", bench_config.jobs_list, "Thread counts for scaling");
  bench->add_option("--scaling-bidders", bench_config.scaling_bidders,
                    "Bidders in the scaling instance (0 skips it)");

  GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Write an instance file");
  generate->add_option("--bidders", generate_args.population.bidder_count, "Bidders");
  generate->add_option("--sectors", generate_args.population.sectors,
                       "Sectors (a perfect square)");
  generate->add_option("--timesteps", generate_args.population.timesteps, "Timesteps");
  generate->add_option("--budget", generate_args.budget, "Budget");
  generate->add_flag("--four-sector-example", generate_args.four_sector,
                     "The hand-checkable four-sector instance");
  generate->add_option("--trace", generate_args.trace,
                       "Build profiles from a trace CSV instead of a random walk");
  generate->add_option("--sigma", generate_args.sigma, "Trace smoothing, in cells");
  generate->add_option("--bid", generate_args.bid, "Bid of every trace participant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*run) return Run(globals, run_args);
    if (*experiment) return Experiment(globals, config_path);
    if (*verify) return Verify(globals, verify_args);
    if (*bench) return Bench(globals, bench_config);
    if (*generate) return Generate(globals, generate_args);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kInputError;
  }
  return kOk;
}
