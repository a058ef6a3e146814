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

// Truthful value maximization: greedy proportional-share allocation and
// critical-value payments.

#ifndef SENSEBID_TVM_HPP_
#define SENSEBID_TVM_HPP_

#include <cstddef>
#include <map>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid {

struct ConsideredEntry {
  ParticipantId id = 0;
  double marginal = 0.0;
  double ratio = 0.0;  // marginal / bid, 0 when the marginal is 0
  bool accepted = false;

  bool operator==(const ConsideredEntry&) const = default;
};

struct AllocationTrace {
  std::vector<ParticipantId> winners;
  std::vector<double> marginals;
  double sum_of_bids = 0.0;
  std::vector<ConsideredEntry> considered_order;

  bool operator==(const AllocationTrace&) const = default;
};

// Greedy allocation. Each step takes the unconsidered bidder with the
// largest marginal/bid ratio (ties to the lowest id) and accepts it iff
//   bid + sum of accepted bids <= input_budget, and
//   bid <= input_budget / 2 * marginal / (marginal + sum of accepted marginals).
// A rejected bidder is dropped and the loop moves on.
AllocationTrace tvm_allocate(const AuctionInstance& instance, double input_budget,
                             std::size_t jobs = 1);

// Critical-value reward of every winner in `trace`. The reward of winner i
// is the supremum of bids with which i would still be selected, computed
// from the allocation run without i. Throws std::invalid_argument if the
// trace was not produced from this instance and input budget.
std::map<ParticipantId, double> tvm_pay(const AuctionInstance& instance,
                                        const AllocationTrace& trace,
                                        double input_budget, std::size_t jobs = 1);

// Allocation plus payments at an arbitrary input budget.
AuctionOutcome tvm_run_at(const AuctionInstance& instance, double input_budget,
                          std::size_t jobs = 1);

inline AuctionOutcome tvm_run(const AuctionInstance& instance, std::size_t jobs = 1) {
  return tvm_run_at(instance, instance.budget, jobs);
}

// V(T) for an explicit winner list, inserting in the given order.
double value_of(const AuctionInstance& instance,
                const std::vector<ParticipantId>& winners);

}  // namespace sensebid

#endif  // SENSEBID_TVM_HPP_
