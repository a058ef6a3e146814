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

#include "sensebid/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace sensebid {
namespace {

std::string Indexed(const std::string& base, std::size_t index) {
  std::ostringstream out;
  out << base << '[' << index << ']';
  return out.str();
}

void CheckDimensions(const std::string& field, const GridSpec& expected,
                     const GridSpec& actual) {
  if (expected == actual) return;
  std::ostringstream out;
  out << "dimension mismatch: expected " << expected.sectors << "x"
      << expected.timesteps << ", got " << actual.sectors << "x"
      << actual.timesteps;
  throw InstanceError(field, out.str());
}

}  // namespace

InstanceError::InstanceError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

ValueMatrix::ValueMatrix(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) {
    throw InstanceError("values", "expected " + std::to_string(grid_.cells()) +
                                      " entries, got " +
                                      std::to_string(values_.size()));
  }
}

ValueMatrix ValueMatrix::Uniform(GridSpec grid, double value) {
  return ValueMatrix(grid, std::vector<double>(grid.cells(), value));
}

MobilityProfile::MobilityProfile(ParticipantId id, GridSpec grid,
                                 std::vector<double> probs)
    : id_(id), grid_(grid), probs_(std::move(probs)) {
  if (probs_.size() != grid_.cells()) {
    throw InstanceError("probs", "expected " + std::to_string(grid_.cells()) +
                                     " entries, got " +
                                     std::to_string(probs_.size()));
  }
  for (std::size_t c = 0; c < probs_.size(); ++c) {
    // NaN is kept in the support so validation can see it.
    if (!(probs_[c] == 0.0)) {
      support_.push_back(static_cast<std::uint32_t>(c));
      support_probs_.push_back(probs_[c]);
    }
  }
}

MobilityProfile MobilityProfile::with_id(ParticipantId id) const {
  MobilityProfile copy = *this;
  copy.id_ = id;
  return copy;
}

std::optional<std::size_t> AuctionInstance::find(ParticipantId id) const {
  for (std::size_t k = 0; k < bidders.size(); ++k) {
    if (bidders[k].id() == id) return k;
  }
  return std::nullopt;
}

const Bidder& AuctionInstance::bidder(ParticipantId id) const {
  auto index = find(id);
  if (!index) throw std::out_of_range("unknown participant " + std::to_string(id));
  return bidders[*index];
}

AuctionInstance AuctionInstance::with_bid(ParticipantId id, double bid) const {
  AuctionInstance copy = *this;
  auto index = find(id);
  if (!index) throw std::out_of_range("unknown participant " + std::to_string(id));
  copy.bidders[*index].bid.bid = bid;
  return copy;
}

AuctionInstance AuctionInstance::without(ParticipantId id) const {
  AuctionInstance copy = *this;
  std::erase_if(copy.bidders, [id](const Bidder& b) { return b.id() == id; });
  return copy;
}

AuctionInstance AuctionInstance::with_budget(double new_budget) const {
  AuctionInstance copy = *this;
  copy.budget = new_budget;
  return copy;
}

AuctionInstance validate_instance(AuctionInstance instance) {
  const GridSpec& grid = instance.grid;
  if (grid.sectors < 1) throw InstanceError("sectors", "must be >= 1");
  if (grid.timesteps < 1) throw InstanceError("timesteps", "must be >= 1");
  if (!(instance.budget > 0.0) || !std::isfinite(instance.budget)) {
    throw InstanceError("budget", "must be a positive finite real");
  }

  CheckDimensions("values", grid, instance.values.grid());
  auto values = instance.values.data();
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (!(values[c] >= 0.0) || !std::isfinite(values[c])) {
      throw InstanceError(Indexed("values", c), "must be a finite value >= 0");
    }
  }

  std::set<ParticipantId> seen;
  for (std::size_t k = 0; k < instance.bidders.size(); ++k) {
    const Bidder& bidder = instance.bidders[k];
    const std::string base = Indexed("bidders", k);
    if (!seen.insert(bidder.id()).second) {
      throw InstanceError(base + ".id",
                          "duplicate participant id " + std::to_string(bidder.id()));
    }
    if (bidder.profile.id() != bidder.id()) {
      throw InstanceError(base + ".probs", "profile belongs to participant " +
                                               std::to_string(bidder.profile.id()));
    }
    if (!(bidder.bid.bid > 0.0) || !std::isfinite(bidder.bid.bid)) {
      throw InstanceError(base + ".bid", "must be a positive finite real");
    }
    if (bidder.bid.true_cost &&
        (!(*bidder.bid.true_cost > 0.0) || !std::isfinite(*bidder.bid.true_cost))) {
      throw InstanceError(base + ".true_cost", "must be a positive finite real");
    }
    CheckDimensions(base + ".probs", grid, bidder.profile.grid());
    auto probs = bidder.profile.data();
    for (std::size_t c = 0; c < probs.size(); ++c) {
      if (!(probs[c] >= 0.0 && probs[c] <= 1.0)) {
        throw InstanceError(Indexed(base + ".probs", c),
                            "probability out of range [0, 1]");
      }
    }
    for (std::size_t j = 0; j < grid.timesteps; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < grid.sectors; ++i) sum += bidder.profile.at(i, j);
      if (sum > 1.0 + kRowSumSlack) {
        throw InstanceError(base + ".probs",
                            "probabilities at timestep " + std::to_string(j) +
                                " sum to more than 1");
      }
    }
  }
  return instance;
}

}  // namespace sensebid
