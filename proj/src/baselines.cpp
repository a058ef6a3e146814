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

#include "sensebid/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sensebid/coverage.hpp"

namespace sensebid {
namespace {

AuctionOutcome FirstPrice(const AuctionInstance& instance,
                          const std::vector<std::size_t>& chosen,
                          const std::vector<double>& marginals) {
  AuctionOutcome outcome;
  CoverageState state(instance.grid);
  for (auto k : chosen) {
    const Bidder& bidder = instance.bidders[k];
    outcome.winners.push_back(bidder.id());
    outcome.rewards[bidder.id()] = bidder.bid.bid;
    outcome.payments_total += bidder.bid.bid;
    state.insert(bidder.profile);
  }
  outcome.marginals = marginals;
  outcome.achieved_value = total_value(instance.values, state);
  return outcome;
}

}  // namespace

AuctionOutcome greedy_bid_threshold(const AuctionInstance& instance, std::size_t jobs,
                                    GreedyOptions options) {
  const std::size_t m = instance.bidders.size();
  std::vector<const MobilityProfile*> profiles;
  for (const auto& bidder : instance.bidders) profiles.push_back(&bidder.profile);
  CoverageState state(instance.grid);
  std::vector<double> marginal = marginal_values(instance.values, state, profiles, jobs);
  std::vector<std::size_t> fresh_at(m, 0);

  // (ratio desc, id asc); stale ratios are upper bounds.
  using Key = std::pair<double, ParticipantId>;
  auto order = [](const std::pair<Key, std::size_t>& a, const std::pair<Key, std::size_t>& b) {
    if (a.first.first != b.first.first) return a.first.first > b.first.first;
    return a.first.second < b.first.second;
  };
  std::set<std::pair<Key, std::size_t>, decltype(order)> queue(order);
  auto key = [&](std::size_t k) {
    const double bid = instance.bidders[k].bid.bid;
    return Key{marginal[k] > 0.0 ? marginal[k] / bid : 0.0, instance.bidders[k].id()};
  };
  for (std::size_t k = 0; k < m; ++k) queue.insert({key(k), k});

  std::vector<std::size_t> chosen;
  std::vector<double> chosen_marginals;
  double bid_sum = 0.0;
  while (!queue.empty()) {
    auto top = queue.begin();
    if (fresh_at[top->second] != chosen.size() && marginal[top->second] > 0.0) {
      const std::size_t k = top->second;
      queue.erase(top);
      marginal[k] = marginal_value(instance.values, state, *profiles[k]);
      fresh_at[k] = chosen.size();
      queue.insert({key(k), k});
      continue;
    }
    const std::size_t k = top->second;
    queue.erase(top);
    const double bid = instance.bidders[k].bid.bid;
    if (!(marginal[k] > 0.0) || bid > options.theta * marginal[k]) continue;
    if (options.clamp_to_budget && bid_sum + bid > instance.budget) continue;
    chosen.push_back(k);
    chosen_marginals.push_back(marginal[k]);
    bid_sum += bid;
    state.insert(*profiles[k]);
  }
  return FirstPrice(instance, chosen, chosen_marginals);
}

AuctionOutcome random_selection(const AuctionInstance& instance, std::uint64_t seed) {
  std::vector<std::size_t> order(instance.bidders.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> chosen;
  std::vector<double> marginals;
  CoverageState state(instance.grid);
  double bid_sum = 0.0;
  for (auto k : order) {
    const Bidder& bidder = instance.bidders[k];
    if (bid_sum + bidder.bid.bid > instance.budget) break;
    bid_sum += bidder.bid.bid;
    marginals.push_back(marginal_value(instance.values, state, bidder.profile));
    state.insert(bidder.profile);
    chosen.push_back(k);
  }
  return FirstPrice(instance, chosen, marginals);
}

}  // namespace sensebid
