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

// Heuristic value maximization: search the input budget handed to TVM for
// the run whose payments use as much of the actual budget as possible.
//
// The search brackets the target by doubling, then shrinks the bracket with
// interpolation probes. Every probe is a full TVM run.

#ifndef SENSEBID_HVM_HPP_
#define SENSEBID_HVM_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid {

inline constexpr std::size_t kMaxDoublings = 64;

struct BudgetBracket {
  double b_min = 0.0;
  double b_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  std::size_t probes = 0;
  // The run at the actual budget already pays exactly the budget.
  bool degenerate = false;
  // Payments never exceeded the budget within kMaxDoublings doublings.
  bool saturated = false;
};

struct ProbeRecord {
  double input_budget = 0.0;
  double payment_sum = 0.0;
  double achieved_value = 0.0;

  bool operator==(const ProbeRecord&) const = default;
};

struct SearchLog {
  std::vector<ProbeRecord> probes;  // in probe order
  double b_star = 0.0;              // input budget of the returned outcome
  std::size_t tvm_evaluations = 0;
  std::size_t bracket_probes = 0;
  bool degenerate = false;
  bool saturated = false;
  // Payments are non-decreasing in input budget across the probes.
  bool monotone = true;
};

struct SearchResult {
  AuctionOutcome outcome;
  SearchLog log;
};

enum class SearchStrategy { kInterpolation, kBinary };

// Spacing between distinct probes: max(1e-6 * budget, 1e-9).
double search_step(double budget);

// Next probe on the line through (b_min, p_min) and (b_max, p_max) at
// height `target`, clamped into [b_min, b_max]. A flat segment falls back
// to the midpoint.
double interpolate_next(double b_min, double b_max, double p_min, double p_max,
                        double target);

// Probes plain bisection needs to close an interval of the given width
// when each probe removes itself plus `step` on the discarded side.
std::size_t bisection_probe_count(double width, double step);

// Search driver over an arbitrary payment curve. `probe` runs the
// mechanism at an input budget; the outcome's payments_total is the curve.
class BudgetSearch {
 public:
  using Probe = std::function<AuctionOutcome(double input_budget)>;

  BudgetSearch(double budget, Probe probe);

  BudgetBracket find_bracket();
  void refine(const BudgetBracket& bracket, SearchStrategy strategy);

  // Best feasible probe: highest achieved value, then highest payments,
  // then lowest input budget.
  SearchResult result() const;

 private:
  const AuctionOutcome& run(double input_budget);

  double budget_;
  Probe probe_;
  SearchLog log_;
  AuctionOutcome last_;
  std::optional<AuctionOutcome> best_;
  double best_budget_ = 0.0;
};

BudgetBracket find_bracket(const AuctionInstance& instance, std::size_t jobs = 1);

SearchResult hvm_run(const AuctionInstance& instance, std::size_t jobs = 1);

// Same search with midpoint probes; the comparator for probe counts.
SearchResult binary_search_budget(const AuctionInstance& instance, std::size_t jobs = 1);

}  // namespace sensebid

#endif  // SENSEBID_HVM_HPP_
