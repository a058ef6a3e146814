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

// Helpers shared by the unit tests.

#ifndef SENSEBID_TESTS_TEST_UTIL_HPP_
#define SENSEBID_TESTS_TEST_UTIL_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid::testing {

// Random profile whose rows sum to at most 1; about half the cells are 0.
inline MobilityProfile RandomProfile(std::mt19937_64& rng, ParticipantId id, GridSpec grid) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> probs(grid.cells(), 0.0);
  for (std::size_t j = 0; j < grid.timesteps; ++j) {
    double room = 1.0;
    for (std::size_t i = 0; i < grid.sectors; ++i) {
      if (unit(rng) < 0.5) continue;
      const double p = room * unit(rng) * 0.6;
      probs[grid.index(i, j)] = p;
      room -= p;
    }
  }
  return MobilityProfile(id, grid, std::move(probs));
}

inline ValueMatrix RandomValues(std::mt19937_64& rng, GridSpec grid) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(grid.cells());
  for (auto& v : values) v = unit(rng);
  return ValueMatrix(grid, std::move(values));
}

// W(i, j, T) straight from the product form.
inline std::vector<double> DirectCoverage(GridSpec grid,
                                          const std::vector<MobilityProfile>& set) {
  std::vector<double> w(grid.cells());
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    double miss = 1.0;
    for (const auto& profile : set) miss *= 1.0 - profile.data()[c];
    w[c] = 1.0 - miss;
  }
  return w;
}

}  // namespace sensebid::testing

#endif  // SENSEBID_TESTS_TEST_UTIL_HPP_
