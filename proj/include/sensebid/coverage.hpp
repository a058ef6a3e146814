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

// The coverage objective V(T) = sum_ij V_ij * W(i, j, T), where
// W(i, j, T) = 1 - prod_{k in T} (1 - p_k^{i,j}) is maintained incrementally
// with W' = 1 - (1 - p) * (1 - W).

#ifndef SENSEBID_COVERAGE_HPP_
#define SENSEBID_COVERAGE_HPP_

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid {

class CoverageState {
 public:
  CoverageState() = default;
  explicit CoverageState(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> w() const { return w_; }
  double at(std::size_t sector, std::size_t timestep) const {
    return w_[grid_.index(sector, timestep)];
  }
  const std::set<ParticipantId>& members() const { return members_; }
  bool contains(ParticipantId id) const { return members_.contains(id); }

  // In-place form of coverage_insert for a state owned by a single run.
  // Cells where p = 0 are left untouched.
  void insert(const MobilityProfile& profile);

 private:
  GridSpec grid_;
  std::vector<double> w_;
  std::set<ParticipantId> members_;
};

// Throws std::invalid_argument on a duplicate member or dimension mismatch.
CoverageState coverage_insert(const CoverageState& state,
                              const MobilityProfile& profile);

double total_value(const ValueMatrix& values, const CoverageState& state);

// Delta = sum_ij V_ij * p^{i,j} * (1 - W_ij). Does not touch the state.
double marginal_value(const ValueMatrix& values, const CoverageState& state,
                      const MobilityProfile& profile);

// Marginals for each profile, in input order, split over `jobs` threads.
// Every entry is computed by the same sequential kernel, so the result is
// bit-identical for any jobs value.
std::vector<double> marginal_values(const ValueMatrix& values,
                                    const CoverageState& state,
                                    std::span<const MobilityProfile* const> profiles,
                                    std::size_t jobs);

std::map<ParticipantId, double> marginal_value_batch(
    const ValueMatrix& values, const CoverageState& state,
    std::span<const MobilityProfile> profiles, std::size_t jobs);

}  // namespace sensebid

#endif  // SENSEBID_COVERAGE_HPP_
