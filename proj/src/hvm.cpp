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

#include "sensebid/hvm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "sensebid/tvm.hpp"

namespace sensebid {
namespace {

// Smallest width that needs more than `probes` bisection probes.
double BisectionReach(std::size_t probes, double step) {
  double width = 0.0;
  for (std::size_t r = 0; r < probes; ++r) width = 2.0 * (width + step);
  return width;
}

bool Better(const AuctionOutcome& candidate, double candidate_budget,
            const AuctionOutcome& incumbent, double incumbent_budget) {
  if (candidate.achieved_value != incumbent.achieved_value) {
    return candidate.achieved_value > incumbent.achieved_value;
  }
  if (candidate.payments_total != incumbent.payments_total) {
    return candidate.payments_total > incumbent.payments_total;
  }
  return candidate_budget < incumbent_budget;
}

SearchResult Search(const AuctionInstance& instance, std::size_t jobs,
                    SearchStrategy strategy) {
  BudgetSearch search(instance.budget, [&instance, jobs](double input_budget) {
    return tvm_run_at(instance, input_budget, jobs);
  });
  search.refine(search.find_bracket(), strategy);
  return search.result();
}

}  // namespace

double search_step(double budget) { return std::max(1e-6 * budget, 1e-9); }

double interpolate_next(double b_min, double b_max, double p_min, double p_max,
                        double target) {
  if (!(p_max > p_min)) return b_min + (b_max - b_min) / 2.0;
  const double slope = (b_max - b_min) / (p_max - p_min);
  return std::clamp(b_min + (target - p_min) * slope, b_min, b_max);
}

std::size_t bisection_probe_count(double width, double step) {
  std::size_t probes = 0;
  while (width >= 0.0) {
    width = width / 2.0 - step;
    ++probes;
  }
  return probes;
}

BudgetSearch::BudgetSearch(double budget, Probe probe)
    : budget_(budget), probe_(std::move(probe)) {
  if (!(budget_ > 0.0)) throw std::invalid_argument("budget must be positive");
}

const AuctionOutcome& BudgetSearch::run(double input_budget) {
  last_ = probe_(input_budget);
  log_.probes.push_back({input_budget, last_.payments_total, last_.achieved_value});
  ++log_.tvm_evaluations;
  if (last_.payments_total <= budget_ &&
      (!best_ || Better(last_, input_budget, *best_, best_budget_))) {
    best_ = last_;
    best_budget_ = input_budget;
  }
  return last_;
}

BudgetBracket BudgetSearch::find_bracket() {
  BudgetBracket bracket;
  double current = budget_;
  double paid = run(current).payments_total;
  bracket.probes = 1;
  if (paid >= budget_) {
    // Nothing to gain above a run that already spends the whole budget.
    bracket.b_min = bracket.b_max = current;
    bracket.p_min = bracket.p_max = paid;
    bracket.degenerate = true;
  } else {
    for (std::size_t doubling = 1;; ++doubling) {
      const double previous = current;
      const double previous_paid = paid;
      current *= 2.0;
      paid = run(current).payments_total;
      ++bracket.probes;
      if (paid > budget_) {
        bracket.b_min = previous;
        bracket.b_max = current;
        bracket.p_min = previous_paid;
        bracket.p_max = paid;
        break;
      }
      if (doubling == kMaxDoublings) {
        bracket.b_min = bracket.b_max = current;
        bracket.p_min = bracket.p_max = paid;
        bracket.saturated = true;
        break;
      }
    }
  }
  log_.bracket_probes = bracket.probes;
  log_.degenerate = bracket.degenerate;
  log_.saturated = bracket.saturated;
  return bracket;
}

void BudgetSearch::refine(const BudgetBracket& bracket, SearchStrategy strategy) {
  if (bracket.degenerate || bracket.saturated) return;
  const double step = search_step(budget_);
  double b_min = bracket.b_min;
  double b_max = bracket.b_max;
  double p_min = bracket.p_min;
  double p_max = bracket.p_max;
  // Interpolation may use at most as many probes as bisection would.
  const std::size_t allowance = bisection_probe_count(b_max - b_min, step);
  std::size_t used = 0;

  while (b_min <= b_max) {
    const double mid = b_min + (b_max - b_min) / 2.0;
    double next = mid;
    if (strategy == SearchStrategy::kInterpolation) {
      next = interpolate_next(b_min, b_max, p_min, p_max, budget_);
      const std::size_t left = allowance > used + 1 ? allowance - used - 1 : 0;
      // Bracket widths sit on the step lattice, so later widths land on
      // bisection boundaries and round either way. The margin halves with
      // every probe, hence it scales with the reach.
      const double margin = 1e-3 * (BisectionReach(left, step) + step);
      const double reach = BisectionReach(left, step) - margin;
      next = std::clamp(next, std::min(mid, b_max - step - reach),
                        std::max(mid, b_min + step + reach));
      const auto fits = [&](double x) {
        return bisection_probe_count(x - step - b_min + margin, step) <= left &&
               bisection_probe_count(b_max - x - step + margin, step) <= left;
      };
      if (!fits(next)) next = mid;
    }
    const double paid = run(next).payments_total;
    ++used;
    if (paid > budget_) {
      b_max = next - step;
      p_max = paid;
    } else {
      b_min = next + step;
      p_min = paid;
    }
  }
}

SearchResult BudgetSearch::result() const {
  if (!best_) {
    throw std::logic_error("budget search found no feasible probe");
  }
  SearchResult out{*best_, log_};
  out.log.b_star = best_budget_;
  auto sorted = log_.probes;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.input_budget < b.input_budget;
  });
  for (std::size_t n = 1; n < sorted.size(); ++n) {
    if (sorted[n].payment_sum < sorted[n - 1].payment_sum) out.log.monotone = false;
  }
  return out;
}

BudgetBracket find_bracket(const AuctionInstance& instance, std::size_t jobs) {
  BudgetSearch search(instance.budget, [&instance, jobs](double input_budget) {
    return tvm_run_at(instance, input_budget, jobs);
  });
  return search.find_bracket();
}

SearchResult hvm_run(const AuctionInstance& instance, std::size_t jobs) {
  return Search(instance, jobs, SearchStrategy::kInterpolation);
}

SearchResult binary_search_budget(const AuctionInstance& instance, std::size_t jobs) {
  return Search(instance, jobs, SearchStrategy::kBinary);
}

}  // namespace sensebid
