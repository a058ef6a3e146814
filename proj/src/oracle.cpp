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

#include "sensebid/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sensebid/coverage.hpp"
#include "sensebid/hvm.hpp"
#include "sensebid/parallel.hpp"
#include "sensebid/tvm.hpp"

namespace sensebid {
namespace {

std::vector<std::size_t> ById(const AuctionInstance& instance) {
  std::vector<std::size_t> order(instance.bidders.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.bidders[a].id() < instance.bidders[b].id();
  });
  return order;
}

// Lexicographic subset enumeration with an undoable coverage vector.
class SubsetSearch {
 public:
  explicit SubsetSearch(const AuctionInstance& instance)
      : instance_(instance), order_(ById(instance)), w_(instance.grid.cells(), 0.0) {}

  // Searches every feasible set whose smallest member is order_[first].
  void search_from(std::size_t first) {
    const Bidder& bidder = instance_.bidders[order_[first]];
    if (!(bidder.bid.bid <= instance_.budget)) return;
    include(first, 0.0, 0.0);
  }

  double best_value() const { return best_value_; }
  const std::vector<ParticipantId>& best_subset() const { return best_subset_; }

 private:
  void include(std::size_t pos, double value, double bid_sum) {
    const Bidder& bidder = instance_.bidders[order_[pos]];
    const auto& profile = bidder.profile;
    auto cells = profile.support();
    auto probs = profile.support_probs();
    auto v = instance_.values.data();

    double gain = 0.0;
    const std::size_t mark = undo_.size();
    for (std::size_t n = 0; n < cells.size(); ++n) {
      double& w = w_[cells[n]];
      gain += v[cells[n]] * probs[n] * (1.0 - w);
      undo_.push_back(w);
      w = 1.0 - (1.0 - probs[n]) * (1.0 - w);
    }
    value += gain;
    bid_sum += bidder.bid.bid;
    chosen_.push_back(bidder.id());
    // Lexicographic order: the first set reaching a value keeps it.
    if (value > best_value_) {
      best_value_ = value;
      best_subset_ = chosen_;
    }
    for (std::size_t next = pos + 1; next < order_.size(); ++next) {
      if (bid_sum + instance_.bidders[order_[next]].bid.bid <= instance_.budget) {
        include(next, value, bid_sum);
      }
    }
    chosen_.pop_back();
    for (std::size_t n = cells.size(); n-- > 0;) {
      w_[cells[n]] = undo_[mark + n];
    }
    undo_.resize(mark);
  }

  const AuctionInstance& instance_;
  std::vector<std::size_t> order_;
  std::vector<double> w_;
  std::vector<double> undo_;
  std::vector<ParticipantId> chosen_;
  double best_value_ = 0.0;
  std::vector<ParticipantId> best_subset_;
};

AuctionOutcome RunMechanism(const AuctionInstance& instance, MechanismKind kind) {
  if (kind == MechanismKind::kTvm) return tvm_run(instance, 1);
  return hvm_run(instance, 1).outcome;
}

bool Wins(const AuctionOutcome& outcome, ParticipantId id) {
  return outcome.rewards.contains(id);
}

template <typename T>
std::string Str(const T& value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

PropertyCheck Named(std::string name) {
  PropertyCheck check;
  check.name = std::move(name);
  return check;
}

AuctionInstance WithCosts(AuctionInstance instance) {
  for (auto& bidder : instance.bidders) {
    if (!bidder.bid.true_cost) bidder.bid.true_cost = bidder.bid.bid;
  }
  return instance;
}

void AddSweepCheck(PropertyReport& report, const AuctionInstance& instance,
                   MechanismKind kind, std::size_t grid, std::size_t jobs, bool hard) {
  PropertyCheck check;
  check.name = std::string(to_string(kind)) + ".truthfulness";
  check.hard = hard;
  if (instance.size() > kMaxSweepBidders) {
    check.skipped = true;
    check.detail = "more than " + std::to_string(kMaxSweepBidders) + " bidders";
  } else {
    auto sweep = truthfulness_sweep(WithCosts(instance), kind, grid, jobs);
    check.passed = sweep.max_violation <= 1e-9;
    check.detail = "max violation " + Str(sweep.max_violation);
    for (const auto& bidder : sweep.bidders) {
      if (bidder.max_violation > 1e-9) {
        check.detail += "; bidder " + Str(bidder.id) + " gains " +
                        Str(bidder.max_violation) + " bidding " +
                        Str(bidder.worst_misreport);
        break;
      }
    }
    if (!hard) check.passed = true;
  }
  report.checks.push_back(check);
}

}  // namespace

double approximation_constant() { return (std::numbers::e - 1.0) / (3.0 * std::numbers::e); }

OptimalSolution brute_force_optimal(const AuctionInstance& instance, std::size_t jobs) {
  const std::size_t m = instance.size();
  if (m > kMaxEnumerationBidders) {
    throw std::invalid_argument("brute force limited to " +
                                std::to_string(kMaxEnumerationBidders) + " bidders");
  }
  std::vector<double> best_values(m, 0.0);
  std::vector<std::vector<ParticipantId>> best_subsets(m);
  parallel_for(m, jobs, [&](std::size_t first) {
    SubsetSearch search(instance);
    search.search_from(first);
    best_values[first] = search.best_value();
    best_subsets[first] = search.best_subset();
  });

  OptimalSolution solution;
  for (std::size_t first = 0; first < m; ++first) {
    if (best_values[first] > solution.opt_value) {
      solution.opt_value = best_values[first];
      solution.subset = best_subsets[first];
    }
  }
  if (solution.opt_value > 0.0) {
    const CoverageState empty(instance.grid);
    double largest = 0.0;
    for (const auto& bidder : instance.bidders) {
      largest = std::max(largest, marginal_value(instance.values, empty, bidder.profile));
    }
    solution.lambda = largest / solution.opt_value;
  }
  return solution;
}

double gray_code_optimal_value(const AuctionInstance& instance) {
  const std::size_t m = instance.size();
  if (m > 20) throw std::invalid_argument("gray-code walk limited to 20 bidders");
  const auto order = ById(instance);
  const std::size_t cells = instance.grid.cells();
  auto v = instance.values.data();
  std::vector<int> certain(cells, 0);  // members with p = 1 at the cell
  std::vector<double> miss(cells, 1.0);  // product of (1 - p) over p < 1

  double best = 0.0;
  std::uint64_t members = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << m); ++step) {
    const std::uint64_t next = step ^ (step >> 1);
    const std::uint64_t flipped = next ^ members;
    const auto pos = static_cast<std::size_t>(std::countr_zero(flipped));
    const bool adding = (next & flipped) != 0;
    members = next;

    const auto& profile = instance.bidders[order[pos]].profile;
    auto support = profile.support();
    auto probs = profile.support_probs();
    for (std::size_t n = 0; n < support.size(); ++n) {
      const std::size_t c = support[n];
      if (probs[n] == 1.0) {
        certain[c] += adding ? 1 : -1;
      } else if (adding) {
        miss[c] *= 1.0 - probs[n];
      } else {
        miss[c] /= 1.0 - probs[n];
      }
    }

    double bid_sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (members >> k & 1) bid_sum += instance.bidders[order[k]].bid.bid;
    }
    if (!(bid_sum <= instance.budget)) continue;
    double value = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      value += v[c] * (certain[c] > 0 ? 1.0 : 1.0 - miss[c]);
    }
    best = std::max(best, value);
  }
  return best;
}

const char* to_string(MechanismKind kind) {
  return kind == MechanismKind::kTvm ? "tvm" : "hvm";
}

TruthfulnessReport truthfulness_sweep(const AuctionInstance& instance,
                                      MechanismKind mechanism, std::size_t grid_size,
                                      std::size_t jobs) {
  if (instance.size() > kMaxSweepBidders) {
    throw std::invalid_argument("truthfulness sweep limited to " +
                                std::to_string(kMaxSweepBidders) + " bidders");
  }
  for (const auto& bidder : instance.bidders) {
    if (!bidder.bid.true_cost) {
      throw std::invalid_argument("bidder " + std::to_string(bidder.id()) +
                                  " has no true_cost");
    }
  }
  TruthfulnessReport report;
  report.mechanism = mechanism;
  report.grid_size = grid_size;
  report.bidders.resize(instance.size());
  parallel_for(instance.size(), jobs, [&](std::size_t k) {
    const Bidder& bidder = instance.bidders[k];
    const ParticipantId id = bidder.id();
    const double cost = *bidder.bid.true_cost;
    auto utility = [&](double declared) {
      auto outcome = RunMechanism(instance.with_bid(id, declared), mechanism);
      return Wins(outcome, id) ? outcome.rewards.at(id) - cost : 0.0;
    };
    BidderSweep sweep;
    sweep.id = id;
    sweep.true_cost = cost;
    sweep.truthful_utility = utility(cost);
    for (std::size_t t = 1; t <= grid_size; ++t) {
      const double declared = 3.0 * cost * static_cast<double>(t) /
                              static_cast<double>(grid_size);
      const double gain = utility(declared) - sweep.truthful_utility;
      if (gain > sweep.max_violation) {
        sweep.max_violation = gain;
        sweep.worst_misreport = declared;
      }
    }
    report.bidders[k] = sweep;
  });
  for (const auto& sweep : report.bidders) {
    report.max_violation = std::max(report.max_violation, sweep.max_violation);
  }
  return report;
}

bool PropertyReport::hard_failure() const {
  return std::any_of(checks.begin(), checks.end(), [](const PropertyCheck& check) {
    return check.hard && !check.skipped && !check.passed;
  });
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& check : checks) {
    if (check.name == name) return &check;
  }
  return nullptr;
}

PropertyReport property_battery(const AuctionInstance& instance,
                                const BatteryOptions& options) {
  PropertyReport report;
  const auto tvm = tvm_run(instance, options.jobs);

  {
    auto check = Named("tvm.budget_feasibility");
    check.passed = tvm.payments_total <= instance.budget;
    check.detail = "paid " + Str(tvm.payments_total) + " of " + Str(instance.budget);
    report.checks.push_back(check);
  }
  {
    auto check = Named("tvm.individual_rationality");
    for (const auto& [id, reward] : tvm.rewards) {
      const double bid = instance.bidder(id).bid.bid;
      if (reward < bid) {
        check.passed = false;
        check.detail = "bidder " + Str(id) + " bid " + Str(bid) + " paid " + Str(reward);
        break;
      }
    }
    report.checks.push_back(check);
  }
  {
    auto check = Named("tvm.allocation_monotonicity");
    for (auto id : tvm.winners) {
      const double bid = instance.bidder(id).bid.bid;
      for (double factor : {0.99, 0.9, 0.5, 0.1}) {
        if (!Wins(tvm_run(instance.with_bid(id, bid * factor)), id)) {
          check.passed = false;
          check.detail = "bidder " + Str(id) + " loses at bid " + Str(bid * factor);
          break;
        }
      }
      if (!check.passed) break;
    }
    report.checks.push_back(check);
  }
  {
    auto check = Named("tvm.critical_value");
    for (const auto& [id, reward] : tvm.rewards) {
      const double eps = 1e-6 * reward;
      if (Wins(tvm_run(instance.with_bid(id, reward + eps)), id)) {
        check.passed = false;
        check.detail = "bidder " + Str(id) + " still wins above reward " + Str(reward);
        break;
      }
      if (!Wins(tvm_run(instance.with_bid(id, reward - eps)), id)) {
        check.passed = false;
        check.detail = "bidder " + Str(id) + " loses below reward " + Str(reward);
        break;
      }
    }
    report.checks.push_back(check);
  }
  AddSweepCheck(report, instance, MechanismKind::kTvm, options.sweep_grid, options.jobs,
                true);
  {
    auto check = Named("tvm.approximation");
    if (instance.size() > kMaxApproximationBidders) {
      check.skipped = true;
      check.detail = "more than " + std::to_string(kMaxApproximationBidders) + " bidders";
    } else {
      const auto opt = brute_force_optimal(instance, options.jobs);
      const double bound = (approximation_constant() - opt.lambda) * opt.opt_value;
      check.passed = tvm.achieved_value >= bound;
      check.detail = "value " + Str(tvm.achieved_value) + ", bound " + Str(bound) +
                     ", opt " + Str(opt.opt_value) + ", lambda " + Str(opt.lambda);
    }
    report.checks.push_back(check);
  }

  const auto hvm = hvm_run(instance, options.jobs);
  {
    auto check = Named("hvm.budget_feasibility");
    check.passed = hvm.outcome.payments_total <= instance.budget;
    check.detail = "paid " + Str(hvm.outcome.payments_total) + " of " + Str(instance.budget);
    report.checks.push_back(check);
  }
  {
    auto check = Named("hvm.dominance");
    check.passed = hvm.outcome.achieved_value >= tvm.achieved_value - 1e-12;
    check.detail = "hvm " + Str(hvm.outcome.achieved_value) + ", tvm " +
                   Str(tvm.achieved_value) + ", probes " +
                   std::to_string(hvm.log.tvm_evaluations);
    report.checks.push_back(check);
  }
  AddSweepCheck(report, instance, MechanismKind::kHvm, options.hvm_sweep_grid,
                options.jobs, false);
  return report;
}

AuctionInstance random_instance(std::uint64_t seed, const RandomInstanceOptions& options) {
  std::mt19937_64 rng(seed);
  auto uniform_size = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t m = uniform_size(options.min_bidders, options.max_bidders);
  const GridSpec grid{uniform_size(1, options.max_sectors),
                      uniform_size(1, options.max_timesteps)};

  std::vector<double> values(grid.cells());
  for (auto& value : values) value = unit(rng) < 0.1 ? 0.0 : unit(rng);

  std::vector<ParticipantId> ids(m);
  std::vector<ParticipantId> pool(std::max<std::size_t>(m * 4, 16));
  for (std::size_t n = 0; n < pool.size(); ++n) pool[n] = n;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::copy_n(pool.begin(), m, ids.begin());

  AuctionInstance instance;
  instance.grid = grid;
  instance.values = ValueMatrix(grid, std::move(values));
  double bid_total = 0.0;
  std::uniform_real_distribution<double> bid_dist(options.min_bid, options.max_bid);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> probs(grid.cells(), 0.0);
    for (std::size_t j = 0; j < grid.timesteps; ++j) {
      std::vector<double> raw(grid.sectors);
      double sum = 0.0;
      for (auto& r : raw) {
        r = unit(rng) < options.sparsity ? 0.0 : unit(rng);
        sum += r;
      }
      const double mass = unit(rng);
      if (sum <= 0.0) continue;
      for (std::size_t i = 0; i < grid.sectors; ++i) {
        probs[grid.index(i, j)] = raw[i] / sum * mass;
      }
    }
    const double bid = bid_dist(rng);
    bid_total += bid;
    instance.bidders.push_back(
        {Bid{ids[k], bid, bid}, MobilityProfile(ids[k], grid, std::move(probs))});
  }
  instance.budget = std::uniform_real_distribution<double>(0.1, 1.5)(rng) * bid_total;
  return instance;
}

}  // namespace sensebid
