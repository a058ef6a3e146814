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

// Domain types shared by every mechanism: the sector/timestep grid, task
// values, mobility profiles, bids, auction instances and outcomes.
//
// Matrices are stored row-major with sectors as rows and timesteps as
// columns, so cell (i, j) lives at index i * timesteps + j.

#ifndef SENSEBID_MODEL_HPP_
#define SENSEBID_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sensebid {

using ParticipantId = std::uint64_t;

// Rows of a mobility profile may sum to slightly more than one after
// normalisation round-off.
inline constexpr double kRowSumSlack = 1e-9;

struct GridSpec {
  std::size_t sectors = 0;
  std::size_t timesteps = 0;

  std::size_t cells() const { return sectors * timesteps; }
  std::size_t index(std::size_t sector, std::size_t timestep) const {
    return sector * timesteps + timestep;
  }
  bool operator==(const GridSpec&) const = default;
};

// Raised for any violated instance invariant. field() names the offending
// member, e.g. "bidders[2].probs[5]".
class InstanceError : public std::invalid_argument {
 public:
  InstanceError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Task values V_ij. A zero entry means there is no sensing task at (i, j).
class ValueMatrix {
 public:
  ValueMatrix() = default;
  // Throws InstanceError if values.size() != grid.cells().
  ValueMatrix(GridSpec grid, std::vector<double> values);

  static ValueMatrix Uniform(GridSpec grid, double value);

  const GridSpec& grid() const { return grid_; }
  double at(std::size_t sector, std::size_t timestep) const {
    return values_[grid_.index(sector, timestep)];
  }
  std::span<const double> data() const { return values_; }

  bool operator==(const ValueMatrix&) const = default;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Probability p_k^{i,j} that a participant is in sector i at timestep j.
// The non-zero cells are indexed at construction; every coverage kernel
// iterates only over that support.
class MobilityProfile {
 public:
  MobilityProfile() = default;
  // Throws InstanceError if probs.size() != grid.cells(). Range checks are
  // left to validate_instance so malformed input can be reported by field.
  MobilityProfile(ParticipantId id, GridSpec grid, std::vector<double> probs);

  ParticipantId id() const { return id_; }
  const GridSpec& grid() const { return grid_; }
  double at(std::size_t sector, std::size_t timestep) const {
    return probs_[grid_.index(sector, timestep)];
  }
  std::span<const double> data() const { return probs_; }

  // Ascending cell indices with p > 0 and the matching probabilities.
  std::span<const std::uint32_t> support() const { return support_; }
  std::span<const double> support_probs() const { return support_probs_; }

  MobilityProfile with_id(ParticipantId id) const;

  bool operator==(const MobilityProfile& other) const {
    return id_ == other.id_ && grid_ == other.grid_ && probs_ == other.probs_;
  }

 private:
  ParticipantId id_ = 0;
  GridSpec grid_;
  std::vector<double> probs_;
  std::vector<std::uint32_t> support_;
  std::vector<double> support_probs_;
};

struct Bid {
  ParticipantId participant_id = 0;
  double bid = 0.0;
  // Private cost. Only the simulator and the property checks read it.
  std::optional<double> true_cost;

  bool operator==(const Bid&) const = default;
};

struct Bidder {
  Bid bid;
  MobilityProfile profile;

  ParticipantId id() const { return bid.participant_id; }
  bool operator==(const Bidder&) const = default;
};

struct AuctionInstance {
  GridSpec grid;
  ValueMatrix values;
  std::vector<Bidder> bidders;
  double budget = 0.0;

  std::size_t size() const { return bidders.size(); }
  // Index into bidders, or nullopt.
  std::optional<std::size_t> find(ParticipantId id) const;
  const Bidder& bidder(ParticipantId id) const;

  // Copies with one bidder's declared bid replaced, one bidder removed, or
  // a different budget.
  AuctionInstance with_bid(ParticipantId id, double bid) const;
  AuctionInstance without(ParticipantId id) const;
  AuctionInstance with_budget(double budget) const;

  bool operator==(const AuctionInstance&) const = default;
};

struct AuctionOutcome {
  std::vector<ParticipantId> winners;  // selection order
  std::vector<double> marginals;       // marginal value at selection time
  std::map<ParticipantId, double> rewards;
  double achieved_value = 0.0;
  double payments_total = 0.0;

  bool operator==(const AuctionOutcome&) const = default;
};

// Returns the instance unchanged when every invariant holds; otherwise
// throws InstanceError naming the first violated field.
AuctionInstance validate_instance(AuctionInstance instance);

}  // namespace sensebid

#endif  // SENSEBID_MODEL_HPP_
