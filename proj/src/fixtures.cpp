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

#include "sensebid/fixtures.hpp"

#include <vector>

namespace sensebid {

AuctionInstance four_sector_example() {
  const GridSpec grid{4, 1};
  AuctionInstance instance{grid, ValueMatrix(grid, {0.3, 0.2, 0.1, 0.4}), {}, 20.0};
  const std::vector<std::vector<double>> probs = {
      {0.2, 0.1, 0.3, 0.4}, {0.0, 0.8, 0.05, 0.15}, {0.4, 0.2, 0.0, 0.4}};
  const double bids[] = {10.0, 8.0, 12.0};
  for (ParticipantId id = 1; id <= 3; ++id) {
    instance.bidders.push_back(
        {Bid{id, bids[id - 1], bids[id - 1]}, MobilityProfile(id, grid, probs[id - 1])});
  }
  return validate_instance(std::move(instance));
}

}  // namespace sensebid
