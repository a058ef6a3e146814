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

// Exhaustive optimum and the property checks that anchor the mechanisms'
// guarantees on small instances.

#ifndef SENSEBID_ORACLE_HPP_
#define SENSEBID_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid {

inline constexpr std::size_t kMaxEnumerationBidders = 25;
inline constexpr std::size_t kMaxSweepBidders = 10;
inline constexpr std::size_t kMaxApproximationBidders = 15;

// (e - 1) / (3e), the constant in the TVM approximation guarantee.
double approximation_constant();

struct OptimalSolution {
  std::vector<ParticipantId> subset;  // ascending ids
  double opt_value = 0.0;
  // Largest single-bidder value divided by opt_value; 0 when opt_value is 0.
  double lambda = 0.0;
};

// max V(T) subject to the sum of bids in T <= budget, by recursive
// inclusion with budget pruning. Ties go to the lexicographically smallest
// id set. Throws std::invalid_argument above kMaxEnumerationBidders.
OptimalSolution brute_force_optimal(const AuctionInstance& instance, std::size_t jobs = 1);

// The same optimum value by a Gray-code walk over all subsets, keeping the
// per-cell complement product under single-element flips. Limited to 20
// bidders.
double gray_code_optimal_value(const AuctionInstance& instance);

enum class MechanismKind { kTvm, kHvm };

const char* to_string(MechanismKind kind);

struct BidderSweep {
  ParticipantId id = 0;
  double true_cost = 0.0;
  double truthful_utility = 0.0;
  double max_violation = 0.0;  // max over misreports of u(x) - u(true cost)
  double worst_misreport = 0.0;
};

struct TruthfulnessReport {
  MechanismKind mechanism = MechanismKind::kTvm;
  std::size_t grid_size = 0;
  std::vector<BidderSweep> bidders;
  double max_violation = 0.0;
};

// For each bidder k, replaces k's bid by each of `grid_size` points
// 3 * cost * t / grid_size and reruns the mechanism, comparing utilities
// with bidding the true cost. Others keep their declared bids. Throws
// std::invalid_argument when a true cost is missing or there are more than
// kMaxSweepBidders bidders.
TruthfulnessReport truthfulness_sweep(const AuctionInstance& instance,
                                      MechanismKind mechanism, std::size_t grid_size,
                                      std::size_t jobs = 1);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  bool hard = true;    // failure makes the battery fail
  bool skipped = false;
  std::string detail;  // witness on failure, measurements otherwise
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool hard_failure() const;
  const PropertyCheck* find(const std::string& name) const;
};

struct BatteryOptions {
  std::size_t sweep_grid = 50;
  std::size_t hvm_sweep_grid = 10;
  std::size_t jobs = 1;
};

// Budget feasibility, individual rationality, allocation monotonicity,
// critical-value boundary and truthfulness of TVM, the approximation bound
// against the brute-force optimum (m <= 15), and HVM feasibility and
// dominance. HVM truthfulness is reported but never fails the battery.
// Bidders without a true cost are treated as bidding truthfully.
PropertyReport property_battery(const AuctionInstance& instance,
                                const BatteryOptions& options = {});

struct RandomInstanceOptions {
  std::size_t min_bidders = 1;
  std::size_t max_bidders = 8;
  std::size_t max_sectors = 10;
  std::size_t max_timesteps = 4;
  double min_bid = 0.1;
  double max_bid = 2.0;
  // Probability that a profile cell is zero.
  double sparsity = 0.5;
};

// Seeded random instance: uniform values, sparse profiles with per-timestep
// mass at most 1, uniform bids with true_cost = bid, and a budget between
// 10% and 150% of the bid total.
AuctionInstance random_instance(std::uint64_t seed, const RandomInstanceOptions& options = {});

}  // namespace sensebid

#endif  // SENSEBID_ORACLE_HPP_
