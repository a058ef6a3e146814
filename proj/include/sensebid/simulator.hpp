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

// Synthetic bidder populations, mobility-trace ingestion, sector weights
// and task-failure realisations.

#ifndef SENSEBID_SIMULATOR_HPP_
#define SENSEBID_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sensebid/model.hpp"

namespace sensebid {

struct PopulationConfig {
  std::size_t sectors = 400;  // laid out as a square grid
  std::size_t timesteps = 12;
  std::size_t bidder_count = 100;
  double trip_duration_mean = 6.0;  // Poisson mean, in timesteps
  double bid_gap_mean = 3.0;        // Poisson mean of the trip start, in timesteps
  double bid_mean = 0.5;
  double bid_sd = 0.15;
  double position_sigma = 1.0;  // positional uncertainty, in cells
  std::uint64_t rng_seed = 0;
};

// Throws std::invalid_argument on a bad config.
void validate_config(const PopulationConfig& config);

struct Population {
  GridSpec grid;
  std::vector<Bidder> bidders;  // ids 0..bidder_count-1, true_cost = bid
};

// Each bidder walks a nearest-neighbour random walk from a uniform start
// sector for a Poisson trip duration (at least 1, cut at the horizon),
// starting after a Poisson gap. Each walked cell becomes a Gaussian blob of
// probability mass 1 at its timestep. Bids are Normal(bid_mean, bid_sd)
// redrawn until above 0.01. A pure function of the config.
Population generate_population(const PopulationConfig& config);

// Population plus sector weights from its profiles and the given budget.
AuctionInstance make_instance(const Population& population, double budget);

struct TraceRow {
  ParticipantId participant_id = 0;
  std::size_t timestep = 0;
  std::size_t sector_id = 0;

  bool operator==(const TraceRow&) const = default;
};

struct TraceFile {
  std::vector<TraceRow> rows;
};

class TraceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// CSV with header `participant_id,timestep,sector_id`. Throws TraceError
// naming the line of a malformed row.
TraceFile parse_trace_csv(std::istream& in);
TraceFile read_trace_file(const std::string& path);
void write_trace_csv(std::ostream& out, const TraceFile& trace);

// One profile per participant, ascending id. Each observation puts mass 1
// (split evenly between observations sharing a timestep) on its sector,
// blurred by a Gaussian of the given sigma in cells. Timesteps without
// observations stay zero. sigma > 0 needs a square sector count.
std::vector<MobilityProfile> ingest_trace(const TraceFile& trace, GridSpec grid,
                                          double smoothing_sigma);

// V_ij = share of visits landing in sector i, the same for every j.
// Throws std::invalid_argument when there are no visits.
ValueMatrix sector_weights_from_visits(const TraceFile& trace, GridSpec grid);
ValueMatrix sector_weights_from_visits(const std::vector<MobilityProfile>& profiles,
                                       GridSpec grid);

// Drops each winner independently with probability tfp and returns the
// value covered by the survivors. Winner n survives iff u_n >= tfp for the
// n-th uniform draw of the seeded stream, so a fixed seed couples runs
// across tfp values.
double simulate_execution(const AuctionOutcome& outcome, const AuctionInstance& instance,
                          double tfp, std::uint64_t seed);

}  // namespace sensebid

#endif  // SENSEBID_SIMULATOR_HPP_
