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

#include "sensebid/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "sensebid/coverage.hpp"
#include "sensebid/seeds.hpp"

namespace sensebid {
namespace {

std::size_t SquareSide(std::size_t sectors) {
  auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(sectors))));
  while (side * side > sectors) --side;
  while ((side + 1) * (side + 1) <= sectors) ++side;
  return side * side == sectors ? side : 0;
}

// Adds `mass` spread as a truncated, renormalised Gaussian around `sector`
// into column `timestep` of probs.
void AddBlob(std::vector<double>& probs, const GridSpec& grid, std::size_t side,
             std::size_t sector, std::size_t timestep, double sigma, double mass) {
  if (sigma <= 0.0) {
    probs[grid.index(sector, timestep)] += mass;
    return;
  }
  const auto radius = static_cast<long>(std::ceil(3.0 * sigma));
  const long row = static_cast<long>(sector / side);
  const long col = static_cast<long>(sector % side);
  const long n = static_cast<long>(side);
  std::vector<std::pair<std::size_t, double>> weights;
  double total = 0.0;
  for (long r = std::max(0L, row - radius); r <= std::min(n - 1, row + radius); ++r) {
    for (long c = std::max(0L, col - radius); c <= std::min(n - 1, col + radius); ++c) {
      const double d2 = static_cast<double>((r - row) * (r - row) + (c - col) * (c - col));
      const double w = std::exp(-d2 / (2.0 * sigma * sigma));
      weights.emplace_back(static_cast<std::size_t>(r * n + c), w);
      total += w;
    }
  }
  for (const auto& [cell, w] : weights) {
    probs[grid.index(cell, timestep)] += mass * (w / total);
  }
}

std::size_t ParseField(const std::string& text, std::size_t line, const char* name) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    if (text.empty() || text[0] == '-' || text[0] == '+') throw std::invalid_argument(name);
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw TraceError("line " + std::to_string(line) + ": bad " + name + " '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

void validate_config(const PopulationConfig& config) {
  if (config.sectors == 0 || SquareSide(config.sectors) == 0) {
    throw std::invalid_argument("sectors must be a positive perfect square");
  }
  if (config.timesteps == 0) throw std::invalid_argument("timesteps must be >= 1");
  if (!(config.trip_duration_mean > 0.0)) {
    throw std::invalid_argument("trip_duration_mean must be positive");
  }
  if (!(config.bid_gap_mean > 0.0)) throw std::invalid_argument("bid_gap_mean must be positive");
  if (!(config.bid_mean > 0.01)) throw std::invalid_argument("bid_mean must exceed 0.01");
  if (!(config.bid_sd >= 0.0)) throw std::invalid_argument("bid_sd must be >= 0");
  if (!(config.position_sigma >= 0.0)) {
    throw std::invalid_argument("position_sigma must be >= 0");
  }
}

Population generate_population(const PopulationConfig& config) {
  validate_config(config);
  const std::size_t side = SquareSide(config.sectors);
  Population population;
  population.grid = {config.sectors, config.timesteps};
  const GridSpec& grid = population.grid;

  for (std::size_t k = 0; k < config.bidder_count; ++k) {
    std::mt19937_64 rng(derive_seed(config.rng_seed, k));
    std::poisson_distribution<long> duration_dist(config.trip_duration_mean);
    std::poisson_distribution<long> gap_dist(config.bid_gap_mean);
    const auto duration = static_cast<std::size_t>(std::max(1L, duration_dist(rng)));
    const auto start = std::min(static_cast<std::size_t>(gap_dist(rng)), grid.timesteps - 1);
    const std::size_t end = std::min(grid.timesteps, start + duration);

    std::size_t cell = std::uniform_int_distribution<std::size_t>(0, grid.sectors - 1)(rng);
    std::vector<double> probs(grid.cells(), 0.0);
    for (std::size_t t = start; t < end; ++t) {
      if (t > start) {
        const std::size_t row = cell / side;
        const std::size_t col = cell % side;
        std::size_t moves[4];
        std::size_t count = 0;
        if (row > 0) moves[count++] = cell - side;
        if (row + 1 < side) moves[count++] = cell + side;
        if (col > 0) moves[count++] = cell - 1;
        if (col + 1 < side) moves[count++] = cell + 1;
        if (count > 0) {
          cell = moves[std::uniform_int_distribution<std::size_t>(0, count - 1)(rng)];
        }
      }
      AddBlob(probs, grid, side, cell, t, config.position_sigma, 1.0);
    }

    double bid = config.bid_mean;
    if (config.bid_sd > 0.0) {
      std::normal_distribution<double> bid_dist(config.bid_mean, config.bid_sd);
      do {
        bid = bid_dist(rng);
      } while (!(bid > 0.01));
    }
    population.bidders.push_back({Bid{k, bid, bid}, MobilityProfile(k, grid, std::move(probs))});
  }
  return population;
}

AuctionInstance make_instance(const Population& population, double budget) {
  std::vector<MobilityProfile> profiles;
  profiles.reserve(population.bidders.size());
  for (const auto& bidder : population.bidders) profiles.push_back(bidder.profile);
  AuctionInstance instance;
  instance.grid = population.grid;
  instance.values = sector_weights_from_visits(profiles, population.grid);
  instance.bidders = population.bidders;
  instance.budget = budget;
  return instance;
}

TraceFile parse_trace_csv(std::istream& in) {
  TraceFile trace;
  std::string line;
  std::size_t number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      if (line != "participant_id,timestep,sector_id") {
        throw TraceError("line 1: expected header participant_id,timestep,sector_id");
      }
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (fields.size() != 3 || line.back() == ',') {
      throw TraceError("line " + std::to_string(number) + ": expected 3 fields");
    }
    trace.rows.push_back({ParseField(fields[0], number, "participant_id"),
                          ParseField(fields[1], number, "timestep"),
                          ParseField(fields[2], number, "sector_id")});
  }
  return trace;
}

TraceFile read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open " + path);
  return parse_trace_csv(in);
}

void write_trace_csv(std::ostream& out, const TraceFile& trace) {
  out << "participant_id,timestep,sector_id\n";
  for (const auto& row : trace.rows) {
    out << row.participant_id << ',' << row.timestep << ',' << row.sector_id << '\n';
  }
}

std::vector<MobilityProfile> ingest_trace(const TraceFile& trace, GridSpec grid,
                                          double smoothing_sigma) {
  if (!(smoothing_sigma >= 0.0)) throw TraceError("smoothing sigma must be >= 0");
  const std::size_t side = SquareSide(grid.sectors);
  if (smoothing_sigma > 0.0 && side == 0) {
    throw TraceError("smoothing needs a square sector count");
  }
  for (std::size_t n = 0; n < trace.rows.size(); ++n) {
    const auto& row = trace.rows[n];
    const std::string where = "row " + std::to_string(n + 1);
    if (row.sector_id >= grid.sectors) throw TraceError(where + ": sector out of range");
    if (row.timestep >= grid.timesteps) throw TraceError(where + ": timestep out of range");
    if (n > 0) {
      const auto& prev = trace.rows[n - 1];
      if (std::pair(row.participant_id, row.timestep) <
          std::pair(prev.participant_id, prev.timestep)) {
        throw TraceError(where + ": rows not sorted by (participant_id, timestep)");
      }
    }
  }

  std::vector<MobilityProfile> profiles;
  std::size_t n = 0;
  while (n < trace.rows.size()) {
    const ParticipantId id = trace.rows[n].participant_id;
    std::vector<double> probs(grid.cells(), 0.0);
    while (n < trace.rows.size() && trace.rows[n].participant_id == id) {
      const std::size_t t = trace.rows[n].timestep;
      std::size_t end = n;
      while (end < trace.rows.size() && trace.rows[end].participant_id == id &&
             trace.rows[end].timestep == t) {
        ++end;
      }
      const double mass = 1.0 / static_cast<double>(end - n);
      for (; n < end; ++n) {
        AddBlob(probs, grid, side, trace.rows[n].sector_id, t, smoothing_sigma, mass);
      }
    }
    profiles.emplace_back(id, grid, std::move(probs));
  }
  return profiles;
}

namespace {

ValueMatrix FromVisits(const std::vector<double>& visits, GridSpec grid) {
  double total = 0.0;
  for (double v : visits) total += v;
  if (!(total > 0.0)) throw std::invalid_argument("no sector visits");
  std::vector<double> values(grid.cells());
  for (std::size_t i = 0; i < grid.sectors; ++i) {
    for (std::size_t j = 0; j < grid.timesteps; ++j) {
      values[grid.index(i, j)] = visits[i] / total;
    }
  }
  return ValueMatrix(grid, std::move(values));
}

}  // namespace

ValueMatrix sector_weights_from_visits(const TraceFile& trace, GridSpec grid) {
  std::vector<double> visits(grid.sectors, 0.0);
  for (const auto& row : trace.rows) {
    if (row.sector_id >= grid.sectors) throw TraceError("sector out of range");
    visits[row.sector_id] += 1.0;
  }
  return FromVisits(visits, grid);
}

ValueMatrix sector_weights_from_visits(const std::vector<MobilityProfile>& profiles,
                                       GridSpec grid) {
  std::vector<double> visits(grid.sectors, 0.0);
  for (const auto& profile : profiles) {
    if (!(profile.grid() == grid)) throw std::invalid_argument("profile grid mismatch");
    for (std::size_t i = 0; i < grid.sectors; ++i) {
      for (std::size_t j = 0; j < grid.timesteps; ++j) visits[i] += profile.at(i, j);
    }
  }
  return FromVisits(visits, grid);
}

double simulate_execution(const AuctionOutcome& outcome, const AuctionInstance& instance,
                          double tfp, std::uint64_t seed) {
  if (!(tfp >= 0.0 && tfp <= 1.0)) throw std::invalid_argument("tfp must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CoverageState state(instance.grid);
  for (auto id : outcome.winners) {
    const double u = unit(rng);
    if (u >= tfp) state.insert(instance.bidder(id).profile);
  }
  return total_value(instance.values, state);
}

}  // namespace sensebid
