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

#include <cmath>
#include <sstream>

#include "sensebid/coverage.hpp"
#include "sensebid/fixtures.hpp"
#include "sensebid/simulator.hpp"
#include "sensebid/tvm.hpp"

namespace sensebid {
namespace {

double RowSum(const MobilityProfile& profile, std::size_t timestep) {
  double sum = 0.0;
  for (std::size_t i = 0; i < profile.grid().sectors; ++i) sum += profile.at(i, timestep);
  return sum;
}

TEST_CASE("default population") {
  PopulationConfig config;
  config.rng_seed = 42;
  const Population population = generate_population(config);
  CHECK(population.grid == GridSpec{400, 12});
  REQUIRE(population.bidders.size() == 100);
  for (std::size_t k = 0; k < population.bidders.size(); ++k) {
    const Bidder& bidder = population.bidders[k];
    CHECK(bidder.id() == k);
    CHECK(bidder.bid.bid > 0.01);
    CHECK(bidder.bid.bid < 1.25);
    CHECK(bidder.bid.true_cost == bidder.bid.bid);
    double mass = 0.0;
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(RowSum(bidder.profile, j) <= 1.0 + kRowSumSlack);
      mass += RowSum(bidder.profile, j);
    }
    CHECK(mass >= 1.0 - 1e-9);
  }
  CHECK_NOTHROW(validate_instance(make_instance(population, 5.0)));
}

TEST_CASE("generation is a pure function of the config") {
  PopulationConfig config;
  config.bidder_count = 30;
  config.rng_seed = 7;
  const Population a = generate_population(config);
  CHECK(a.bidders == generate_population(config).bidders);
  config.rng_seed = 8;
  CHECK_FALSE(a.bidders == generate_population(config).bidders);
}

TEST_CASE("long trips are cut at the horizon") {
  PopulationConfig config;
  config.bidder_count = 40;
  config.trip_duration_mean = 1000.0;
  const Population population = generate_population(config);
  for (const auto& bidder : population.bidders) {
    CHECK(RowSum(bidder.profile, config.timesteps - 1) == doctest::Approx(1.0));
  }
}

TEST_CASE("zero bid spread gives the mean exactly") {
  PopulationConfig config;
  config.bidder_count = 20;
  config.bid_sd = 0.0;
  for (const auto& bidder : generate_population(config).bidders) {
    CHECK(bidder.bid.bid == 0.5);
  }
}

TEST_CASE("bad configs are rejected") {
  PopulationConfig config;
  config.sectors = 399;
  CHECK_THROWS_AS(generate_population(config), std::invalid_argument);
  config = {};
  config.timesteps = 0;
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  config = {};
  config.trip_duration_mean = 0.0;
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
  config = {};
  config.bid_sd = -0.1;
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);
}

TEST_CASE("trace ingestion without smoothing") {
  const TraceFile trace{{{5, 0, 2}, {5, 2, 7}, {9, 1, 0}}};
  const auto profiles = ingest_trace(trace, GridSpec{9, 3}, 0.0);
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].id() == 5);
  CHECK(profiles[0].at(2, 0) == 1.0);
  CHECK(profiles[0].at(7, 2) == 1.0);
  CHECK(RowSum(profiles[0], 1) == 0.0);
  CHECK(profiles[1].id() == 9);
  CHECK(profiles[1].at(0, 1) == 1.0);
  CHECK(ingest_trace(TraceFile{}, GridSpec{9, 3}, 1.0).empty());
}

TEST_CASE("trace ingestion with a unit Gaussian on a 3x3 grid") {
  const TraceFile trace{{{1, 0, 4}}};
  const auto profiles = ingest_trace(trace, GridSpec{9, 1}, 1.0);
  REQUIRE(profiles.size() == 1);
  const double edge = std::exp(-0.5);
  const double corner = std::exp(-1.0);
  const double total = 1.0 + 4.0 * edge + 4.0 * corner;
  const MobilityProfile& p = profiles[0];
  CHECK(p.at(4, 0) == doctest::Approx(1.0 / total).epsilon(1e-14));
  for (std::size_t cell : {1, 3, 5, 7}) {
    CHECK(p.at(cell, 0) == doctest::Approx(edge / total).epsilon(1e-14));
  }
  for (std::size_t cell : {0, 2, 6, 8}) {
    CHECK(p.at(cell, 0) == doctest::Approx(corner / total).epsilon(1e-14));
  }
  CHECK(RowSum(p, 0) <= 1.0 + kRowSumSlack);
}

TEST_CASE("two sightings in one timestep split the mass") {
  const TraceFile trace{{{1, 0, 0}, {1, 0, 3}}};
  const auto profiles = ingest_trace(trace, GridSpec{4, 1}, 0.0);
  CHECK(profiles[0].at(0, 0) == 0.5);
  CHECK(profiles[0].at(3, 0) == 0.5);
}

TEST_CASE("trace errors") {
  const GridSpec grid{4, 2};
  CHECK_THROWS_AS(ingest_trace(TraceFile{{{1, 0, 4}}}, grid, 0.0), TraceError);
  CHECK_THROWS_AS(ingest_trace(TraceFile{{{1, 2, 0}}}, grid, 0.0), TraceError);
  CHECK_THROWS_AS(ingest_trace(TraceFile{{{2, 0, 0}, {1, 0, 0}}}, grid, 0.0), TraceError);
  CHECK_THROWS_AS(ingest_trace(TraceFile{{{1, 1, 0}, {1, 0, 0}}}, grid, 0.0), TraceError);
  CHECK_THROWS_AS(ingest_trace(TraceFile{{{1, 0, 0}}}, GridSpec{3, 1}, 1.0), TraceError);

  std::istringstream bad_header("id,t,s\n1,0,0\n");
  CHECK_THROWS_AS(parse_trace_csv(bad_header), TraceError);
  std::istringstream bad_row("participant_id,timestep,sector_id\n1,x,0\n");
  CHECK_THROWS_AS(parse_trace_csv(bad_row), TraceError);
  std::istringstream short_row("participant_id,timestep,sector_id\n1,0\n");
  CHECK_THROWS_AS(parse_trace_csv(short_row), TraceError);
  std::istringstream negative("participant_id,timestep,sector_id\n-1,0,0\n");
  CHECK_THROWS_AS(parse_trace_csv(negative), TraceError);
}

TEST_CASE("trace CSV round trip") {
  const TraceFile trace{{{1, 0, 3}, {1, 1, 2}, {4, 0, 0}}};
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  CHECK(parse_trace_csv(in).rows == trace.rows);
}

TEST_CASE("sector weights from visit shares") {
  TraceFile trace;
  const std::size_t visits[] = {10, 50, 40};
  ParticipantId id = 0;
  for (std::size_t sector = 0; sector < 3; ++sector) {
    for (std::size_t n = 0; n < visits[sector]; ++n) trace.rows.push_back({id++, 0, sector});
  }
  const ValueMatrix weights = sector_weights_from_visits(trace, GridSpec{3, 2});
  CHECK(weights.at(0, 0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(weights.at(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weights.at(2, 0) == doctest::Approx(0.4).epsilon(1e-15));

  CHECK(sector_weights_from_visits(TraceFile{{{1, 0, 0}}}, GridSpec{1, 1}).at(0, 0) == 1.0);
  const TraceFile uniform{{{1, 0, 0}, {1, 0, 1}, {1, 0, 2}, {1, 0, 3}}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(sector_weights_from_visits(uniform, GridSpec{4, 1}).at(i, 0) == 0.25);
  }
  CHECK_THROWS_AS(sector_weights_from_visits(TraceFile{}, GridSpec{4, 1}), std::invalid_argument);
}

TEST_CASE("task failure extremes") {
  const AuctionInstance instance = four_sector_example();
  const AuctionOutcome outcome = tvm_run(instance);
  CHECK(simulate_execution(outcome, instance, 0.0, 3) == outcome.achieved_value);
  CHECK(simulate_execution(outcome, instance, 1.0, 3) == 0.0);
  CHECK_THROWS_AS(simulate_execution(outcome, instance, 1.5, 3), std::invalid_argument);
}

TEST_CASE("task failure mean at one half") {
  const AuctionInstance instance = four_sector_example();
  const AuctionOutcome outcome = tvm_run(instance);
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    sum += simulate_execution(outcome, instance, 0.5, seed);
  }
  CHECK(std::abs(sum / 10000.0 - 0.1125) < 0.005);
}

TEST_CASE("property: realized value falls as the failure rate rises") {
  PopulationConfig config;
  config.bidder_count = 40;
  config.rng_seed = 2;
  const AuctionInstance instance = make_instance(generate_population(config), 4.0);
  const AuctionOutcome outcome = tvm_run(instance);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    double previous = outcome.achieved_value;
    for (double tfp = 0.0; tfp <= 1.0; tfp += 0.125) {
      const double realized = simulate_execution(outcome, instance, tfp, seed);
      REQUIRE(realized <= previous);
      previous = realized;
    }
  }
}

}  // namespace
}  // namespace sensebid
