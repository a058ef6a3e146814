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

#include "sensebid/fixtures.hpp"
#include "sensebid/oracle.hpp"
#include "sensebid/tvm.hpp"

namespace sensebid {
namespace {

TEST_CASE("approximation constant") {
  CHECK(approximation_constant() == doctest::Approx(0.21071).epsilon(1e-4));
  CHECK(std::abs(approximation_constant() - (std::exp(1.0) - 1.0) / (3.0 * std::exp(1.0))) <
        1e-15);
}

TEST_CASE("four-sector optimum") {
  const AuctionInstance instance = four_sector_example();
  const OptimalSolution opt = brute_force_optimal(instance);
  CHECK(opt.subset == std::vector<ParticipantId>{2, 3});
  CHECK(std::abs(opt.opt_value - 0.489) < 1e-12);
  CHECK(std::abs(opt.lambda - 0.32 / 0.489) < 1e-12);
  CHECK(std::abs(gray_code_optimal_value(instance) - 0.489) < 1e-12);
}

TEST_CASE("budget below every bid gives the empty optimum") {
  const AuctionInstance instance = four_sector_example().with_budget(1.0);
  const OptimalSolution opt = brute_force_optimal(instance);
  CHECK(opt.subset.empty());
  CHECK(opt.opt_value == 0.0);
  CHECK(opt.lambda == 0.0);
}

TEST_CASE("property: Gray-code walk and recursive search agree") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    RandomInstanceOptions options;
    options.max_bidders = 12;
    const AuctionInstance instance = random_instance(700 + seed, options);
    const OptimalSolution opt = brute_force_optimal(instance);
    REQUIRE(std::abs(gray_code_optimal_value(instance) - opt.opt_value) <= 1e-12);
    REQUIRE(std::abs(value_of(instance, opt.subset) - opt.opt_value) <= 1e-12);
    double bids = 0.0;
    for (auto id : opt.subset) bids += instance.bidder(id).bid.bid;
    REQUIRE(bids <= instance.budget);
  }
}

TEST_CASE("optimum is independent of jobs") {
  RandomInstanceOptions options;
  options.min_bidders = 14;
  options.max_bidders = 14;
  const AuctionInstance instance = random_instance(42, options);
  const OptimalSolution one = brute_force_optimal(instance, 1);
  const OptimalSolution four = brute_force_optimal(instance, 4);
  CHECK(one.subset == four.subset);
  CHECK(one.opt_value == four.opt_value);
}

TEST_CASE("enumeration limits") {
  RandomInstanceOptions options;
  options.min_bidders = 26;
  options.max_bidders = 26;
  const AuctionInstance big = random_instance(1, options);
  CHECK_THROWS_AS(brute_force_optimal(big), std::invalid_argument);
  CHECK_THROWS_AS(gray_code_optimal_value(big), std::invalid_argument);
  CHECK_THROWS_AS(truthfulness_sweep(big, MechanismKind::kTvm, 10), std::invalid_argument);

  AuctionInstance no_cost = four_sector_example();
  no_cost.bidders[0].bid.true_cost.reset();
  CHECK_THROWS_AS(truthfulness_sweep(no_cost, MechanismKind::kTvm, 10), std::invalid_argument);
}

TEST_CASE("four-sector truthfulness sweep") {
  const TruthfulnessReport report =
      truthfulness_sweep(four_sector_example(), MechanismKind::kTvm, 50);
  CHECK(report.bidders.size() == 3);
  CHECK(report.grid_size == 50);
  CHECK(report.max_violation <= 1e-9);
}

TEST_CASE("four-sector battery passes with HVM truthfulness informational") {
  const PropertyReport report = property_battery(four_sector_example());
  CHECK_FALSE(report.hard_failure());
  for (const auto& check : report.checks) CHECK_MESSAGE(check.passed, check.name);
  const PropertyCheck* hvm_truth = report.find("hvm.truthfulness");
  REQUIRE(hvm_truth != nullptr);
  CHECK_FALSE(hvm_truth->hard);
  CHECK(report.find("tvm.approximation") != nullptr);
  CHECK(report.find("no.such.check") == nullptr);
}

TEST_CASE("approximation check is skipped above its size limit") {
  RandomInstanceOptions options;
  options.min_bidders = 16;
  options.max_bidders = 16;
  BatteryOptions battery;
  battery.sweep_grid = 5;
  battery.hvm_sweep_grid = 2;
  const PropertyReport report = property_battery(random_instance(3, options), battery);
  const PropertyCheck* approx = report.find("tvm.approximation");
  REQUIRE(approx != nullptr);
  CHECK(approx->skipped);
}

TEST_CASE("random instances are valid and reproducible") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AuctionInstance a = random_instance(seed);
    CHECK_NOTHROW(validate_instance(a));
    CHECK(a == random_instance(seed));
    CHECK(a.size() >= 1);
    CHECK(a.size() <= 8);
  }
}

}  // namespace
}  // namespace sensebid
