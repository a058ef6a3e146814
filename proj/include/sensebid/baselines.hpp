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

// Comparison mechanisms. Both pay winners their bids.

#ifndef SENSEBID_BASELINES_HPP_
#define SENSEBID_BASELINES_HPP_

#include <cstddef>
#include <cstdint>

#include "sensebid/model.hpp"

namespace sensebid {

struct GreedyOptions {
  double theta = 1.0;
  // Also require the running bid total to stay within the instance budget.
  bool clamp_to_budget = false;
};

// Takes bidders in decreasing marginal/bid order (marginals recomputed as
// winners are added, ties to the lowest id) and accepts a bidder iff its
// bid is at most theta times its marginal. Rejected bidders are skipped.
AuctionOutcome greedy_bid_threshold(const AuctionInstance& instance, std::size_t jobs = 1,
                                    GreedyOptions options = {});

// Visits bidders in a seeded random order and adds each one until the next
// bid would push the total past the budget.
AuctionOutcome random_selection(const AuctionInstance& instance, std::uint64_t seed);

}  // namespace sensebid

#endif  // SENSEBID_BASELINES_HPP_
