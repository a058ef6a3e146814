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

#include "sensebid/tvm.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>

#include "sensebid/coverage.hpp"
#include "sensebid/parallel.hpp"

namespace sensebid {
namespace {

double Ratio(double marginal, double bid) { return marginal > 0.0 ? marginal / bid : 0.0; }

// Proportional-share cap on a bid: B/2 * delta / (delta + accepted value).
double ShareBound(double budget, double marginal, double accepted_value) {
  return budget / 2.0 * (marginal / (marginal + accepted_value));
}

// Bidders by position.
struct BidderTable {
  std::vector<ParticipantId> ids;
  std::vector<double> bids;
  std::vector<const MobilityProfile*> profiles;

  explicit BidderTable(const AuctionInstance& instance) {
    const std::size_t m = instance.bidders.size();
    ids.reserve(m);
    bids.reserve(m);
    profiles.reserve(m);
    for (const auto& bidder : instance.bidders) {
      ids.push_back(bidder.id());
      bids.push_back(bidder.bid.bid);
      profiles.push_back(&bidder.profile);
    }
  }
};

struct QueueKey {
  double ratio;
  ParticipantId id;
  std::size_t index;
};

struct QueueOrder {
  bool operator()(const QueueKey& a, const QueueKey& b) const {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.id < b.id;
  }
};

struct Step {
  std::size_t index;
  double marginal;
  double ratio;
  bool accepted;
  std::size_t epoch;  // winners accepted before this step
};

// Greedy state with lazily refreshed marginals. Marginals only shrink as
// coverage grows (also in floating point, since every operation rounds
// monotonically), so a stale queue entry is an upper bound and the first
// up-to-date entry at the head of the queue is the true maximum.
class Allocator {
 public:
  Allocator(const AuctionInstance& instance, const BidderTable& table, double budget,
            std::size_t jobs)
      : values_(&instance.values),
        table_(&table),
        budget_(budget),
        coverage_(instance.grid),
        marginal_(marginal_values(*values_, coverage_, table.profiles, jobs)),
        fresh_at_(table.ids.size(), 0) {
    for (std::size_t k = 0; k < marginal_.size(); ++k) {
      queue_.insert({Ratio(marginal_[k], table.bids[k]), table.ids[k], k});
    }
  }

  bool done() const { return queue_.empty(); }
  std::size_t epoch() const { return winners_.size(); }
  double bid_sum() const { return bid_sum_; }
  double accepted_value() const { return accepted_value_; }
  double budget() const { return budget_; }
  const CoverageState& coverage() const { return coverage_; }
  const std::vector<std::size_t>& winners() const { return winners_; }
  const std::vector<double>& winner_marginals() const { return winner_marginals_; }

  // Considers the next candidate. When `checkpoints` is non-null, the state
  // just before an acceptance (candidate already removed) is saved there.
  Step step(std::vector<Allocator>* checkpoints) {
    auto top = queue_.begin();
    while (fresh_at_[top->index] != epoch() && marginal_[top->index] > 0.0) {
      const std::size_t k = top->index;
      queue_.erase(top);
      marginal_[k] = marginal_value(*values_, coverage_, *table_->profiles[k]);
      fresh_at_[k] = epoch();
      queue_.insert({Ratio(marginal_[k], table_->bids[k]), table_->ids[k], k});
      top = queue_.begin();
    }
    const QueueKey key = *top;
    queue_.erase(top);
    const std::size_t k = key.index;
    const double bid = table_->bids[k];
    const double marginal = marginal_[k];
    const std::size_t epoch_before = epoch();

    const bool fits = bid + bid_sum_ <= budget_;
    const bool share = marginal > 0.0 && bid <= ShareBound(budget_, marginal, accepted_value_);
    const bool accepted = fits && share;
    if (accepted) {
      if (checkpoints) checkpoints->push_back(*this);
      winners_.push_back(k);
      winner_marginals_.push_back(marginal);
      bid_sum_ += bid;
      accepted_value_ += marginal;
      coverage_.insert(*table_->profiles[k]);
    }
    return {k, marginal, key.ratio, accepted, epoch_before};
  }

 private:
  const ValueMatrix* values_;
  const BidderTable* table_;
  double budget_;
  CoverageState coverage_;
  std::vector<double> marginal_;
  std::vector<std::size_t> fresh_at_;  // epoch at which marginal_ was computed
  std::set<QueueKey, QueueOrder> queue_;
  std::vector<std::size_t> winners_;
  std::vector<double> winner_marginals_;
  double bid_sum_ = 0.0;
  double accepted_value_ = 0.0;
};

struct MainRun {
  Allocator state;  // after the last step
  std::vector<Step> log;
  std::vector<Allocator> checkpoints;  // one per winner, in selection order
  std::vector<std::size_t> winner_steps;
};

// Folds one step of the run without i into i's critical value. `marginal_i`
// is i's marginal against the winners accepted before the step; a bid x
// for i wins here iff x <= marginal_i * bid_c / marginal_c (i outranks the
// candidate picked at this step) and x passes both acceptance checks.
void Offer(double& best, double budget, double marginal_i, double bid_sum,
           double accepted_value, double marginal_c, double bid_c) {
  if (!(marginal_i > 0.0)) return;
  const double accept_cap =
      std::min(budget - bid_sum, ShareBound(budget, marginal_i, accepted_value));
  const double rank_cap = marginal_c > 0.0 ? marginal_i * bid_c / marginal_c
                                           : std::numeric_limits<double>::infinity();
  best = std::max(best, std::min(rank_cap, accept_cap));
}

double CriticalValue(const AuctionInstance& instance, const BidderTable& table,
                     const MainRun& main, std::size_t winner_rank) {
  const std::size_t i = main.log[main.winner_steps[winner_rank]].index;
  const MobilityProfile& profile_i = *table.profiles[i];
  double best = 0.0;

  // Up to i's own step the run without i is the main run.
  std::size_t known_epoch = 0;
  double marginal_i = 0.0;
  for (std::size_t t = 0; t < main.winner_steps[winner_rank]; ++t) {
    const Step& step = main.log[t];
    const Allocator& state = main.checkpoints[step.epoch];
    if (t == 0 || step.epoch != known_epoch) {
      marginal_i = marginal_value(instance.values, state.coverage(), profile_i);
      known_epoch = step.epoch;
    }
    Offer(best, state.budget(), marginal_i, state.bid_sum(), state.accepted_value(),
          step.marginal, table.bids[step.index]);
  }

  Allocator alternate = main.checkpoints[winner_rank];
  marginal_i = marginal_value(instance.values, alternate.coverage(), profile_i);
  while (!alternate.done()) {
    const std::size_t epoch = alternate.epoch();
    const double bid_sum = alternate.bid_sum();
    const double accepted_value = alternate.accepted_value();
    const Step step = alternate.step(nullptr);
    // From here on nothing is accepted and every offer equals the tail's.
    if (!(step.marginal > 0.0)) break;
    Offer(best, alternate.budget(), marginal_i, bid_sum, accepted_value, step.marginal,
          table.bids[step.index]);
    if (alternate.epoch() != epoch) {
      marginal_i = marginal_value(instance.values, alternate.coverage(), profile_i);
    }
  }
  // Once every other bidder is considered, i is the last candidate.
  Offer(best, alternate.budget(), marginal_i, alternate.bid_sum(),
        alternate.accepted_value(), 0.0, 0.0);
  return best;
}

MainRun RunMain(const AuctionInstance& instance, const BidderTable& table,
                double input_budget, std::size_t jobs, bool checkpoints) {
  MainRun run{Allocator(instance, table, input_budget, jobs), {}, {}, {}};
  while (!run.state.done()) {
    Step step = run.state.step(checkpoints ? &run.checkpoints : nullptr);
    if (step.accepted) run.winner_steps.push_back(run.log.size());
    run.log.push_back(step);
  }
  return run;
}

AllocationTrace ToTrace(const BidderTable& table, const MainRun& run) {
  const Allocator& final_state = run.state;
  AllocationTrace trace;
  for (auto k : final_state.winners()) trace.winners.push_back(table.ids[k]);
  trace.marginals = final_state.winner_marginals();
  trace.sum_of_bids = final_state.bid_sum();
  trace.considered_order.reserve(run.log.size());
  for (const Step& step : run.log) {
    trace.considered_order.push_back(
        {table.ids[step.index], step.marginal, step.ratio, step.accepted});
  }
  return trace;
}

std::map<ParticipantId, double> Rewards(const AuctionInstance& instance,
                                        const BidderTable& table, const MainRun& run,
                                        std::size_t jobs) {
  const std::size_t winners = run.winner_steps.size();
  std::vector<double> rewards(winners);
  parallel_for(winners, jobs, [&](std::size_t rank) {
    rewards[rank] = CriticalValue(instance, table, run, rank);
  });
  std::map<ParticipantId, double> out;
  for (std::size_t rank = 0; rank < winners; ++rank) {
    out.emplace(table.ids[run.log[run.winner_steps[rank]].index], rewards[rank]);
  }
  return out;
}

void RequirePositiveBudget(double input_budget) {
  if (!(input_budget > 0.0)) {
    throw std::invalid_argument("input budget must be positive");
  }
}

}  // namespace

AllocationTrace tvm_allocate(const AuctionInstance& instance, double input_budget,
                             std::size_t jobs) {
  RequirePositiveBudget(input_budget);
  BidderTable table(instance);
  return ToTrace(table, RunMain(instance, table, input_budget, jobs, false));
}

std::map<ParticipantId, double> tvm_pay(const AuctionInstance& instance,
                                        const AllocationTrace& trace,
                                        double input_budget, std::size_t jobs) {
  RequirePositiveBudget(input_budget);
  BidderTable table(instance);
  MainRun run = RunMain(instance, table, input_budget, jobs, true);
  if (ToTrace(table, run).winners != trace.winners) {
    throw std::invalid_argument("trace does not match instance and input budget");
  }
  return Rewards(instance, table, run, jobs);
}

AuctionOutcome tvm_run_at(const AuctionInstance& instance, double input_budget,
                          std::size_t jobs) {
  RequirePositiveBudget(input_budget);
  BidderTable table(instance);
  MainRun run = RunMain(instance, table, input_budget, jobs, true);
  const Allocator& final_state = run.state;

  AuctionOutcome outcome;
  for (auto k : final_state.winners()) outcome.winners.push_back(table.ids[k]);
  outcome.marginals = final_state.winner_marginals();
  outcome.achieved_value = total_value(instance.values, final_state.coverage());
  outcome.rewards = Rewards(instance, table, run, jobs);
  for (auto id : outcome.winners) outcome.payments_total += outcome.rewards.at(id);
  return outcome;
}

double value_of(const AuctionInstance& instance,
                const std::vector<ParticipantId>& winners) {
  CoverageState state(instance.grid);
  for (auto id : winners) state.insert(instance.bidder(id).profile);
  return total_value(instance.values, state);
}

}  // namespace sensebid
