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

#include "sensebid/coverage.hpp"

#include <stdexcept>
#include <string>

#include "sensebid/parallel.hpp"

namespace sensebid {
namespace {

void RequireGrid(const GridSpec& expected, const GridSpec& actual) {
  if (!(expected == actual)) {
    throw std::invalid_argument("coverage: dimension mismatch");
  }
}

double MarginalKernel(std::span<const double> values, std::span<const double> w,
                      const MobilityProfile& profile) {
  auto cells = profile.support();
  auto probs = profile.support_probs();
  double sum = 0.0;
  for (std::size_t n = 0; n < cells.size(); ++n) {
    const std::size_t c = cells[n];
    sum += values[c] * probs[n] * (1.0 - w[c]);
  }
  return sum;
}

}  // namespace

CoverageState::CoverageState(GridSpec grid) : grid_(grid), w_(grid.cells(), 0.0) {}

void CoverageState::insert(const MobilityProfile& profile) {
  RequireGrid(grid_, profile.grid());
  if (!members_.insert(profile.id()).second) {
    throw std::invalid_argument("coverage: participant " +
                                std::to_string(profile.id()) + " already a member");
  }
  auto cells = profile.support();
  auto probs = profile.support_probs();
  for (std::size_t n = 0; n < cells.size(); ++n) {
    double& w = w_[cells[n]];
    w = 1.0 - (1.0 - probs[n]) * (1.0 - w);
  }
}

CoverageState coverage_insert(const CoverageState& state,
                              const MobilityProfile& profile) {
  CoverageState next = state;
  next.insert(profile);
  return next;
}

double total_value(const ValueMatrix& values, const CoverageState& state) {
  RequireGrid(values.grid(), state.grid());
  auto v = values.data();
  auto w = state.w();
  double sum = 0.0;
  for (std::size_t c = 0; c < v.size(); ++c) sum += v[c] * w[c];
  return sum;
}

double marginal_value(const ValueMatrix& values, const CoverageState& state,
                      const MobilityProfile& profile) {
  RequireGrid(values.grid(), state.grid());
  RequireGrid(state.grid(), profile.grid());
  if (state.contains(profile.id())) {
    throw std::invalid_argument("coverage: participant " +
                                std::to_string(profile.id()) + " already a member");
  }
  return MarginalKernel(values.data(), state.w(), profile);
}

std::vector<double> marginal_values(const ValueMatrix& values,
                                    const CoverageState& state,
                                    std::span<const MobilityProfile* const> profiles,
                                    std::size_t jobs) {
  RequireGrid(values.grid(), state.grid());
  for (const MobilityProfile* profile : profiles) {
    RequireGrid(state.grid(), profile->grid());
    if (state.contains(profile->id())) {
      throw std::invalid_argument("coverage: participant " +
                                  std::to_string(profile->id()) +
                                  " already a member");
    }
  }
  std::vector<double> out(profiles.size());
  parallel_for(profiles.size(), jobs, [&](std::size_t k) {
    out[k] = MarginalKernel(values.data(), state.w(), *profiles[k]);
  });
  return out;
}

std::map<ParticipantId, double> marginal_value_batch(
    const ValueMatrix& values, const CoverageState& state,
    std::span<const MobilityProfile> profiles, std::size_t jobs) {
  std::vector<const MobilityProfile*> pointers;
  pointers.reserve(profiles.size());
  for (const auto& profile : profiles) pointers.push_back(&profile);
  auto marginals = marginal_values(values, state, pointers, jobs);
  std::map<ParticipantId, double> out;
  for (std::size_t k = 0; k < pointers.size(); ++k) {
    out.emplace(pointers[k]->id(), marginals[k]);
  }
  return out;
}

}  // namespace sensebid
