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

#include "sensebid/io.hpp"

#include <fstream>
#include <utility>
#include <vector>

namespace sensebid {
namespace {

using nlohmann::json;

const json& Field(const json& object, const char* name, const std::string& where) {
  auto it = object.find(name);
  if (it == object.end()) throw InputError(where + ": missing field '" + name + "'");
  return *it;
}

double Real(const json& node, const std::string& where) {
  if (!node.is_number()) throw InputError(where + ": expected a number");
  return node.get<double>();
}

std::size_t Count(const json& node, const std::string& where) {
  if (!node.is_number_unsigned()) throw InputError(where + ": expected a non-negative integer");
  return node.get<std::size_t>();
}

// Accepts a flat array of sectors * timesteps reals or one array per sector.
std::vector<double> Matrix(const json& node, GridSpec grid, const std::string& where) {
  if (!node.is_array()) throw InputError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(grid.cells());
  const bool nested = !node.empty() && node.front().is_array();
  if (nested) {
    if (node.size() != grid.sectors) {
      throw InputError(where + ": expected " + std::to_string(grid.sectors) + " rows");
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string row_where = where + "[" + std::to_string(i) + "]";
      const json& row = node[i];
      if (!row.is_array() || row.size() != grid.timesteps) {
        throw InputError(row_where + ": expected " + std::to_string(grid.timesteps) +
                         " entries");
      }
      for (std::size_t j = 0; j < row.size(); ++j) {
        out.push_back(Real(row[j], row_where + "[" + std::to_string(j) + "]"));
      }
    }
  } else {
    if (node.size() != grid.cells()) {
      throw InputError(where + ": expected " + std::to_string(grid.cells()) + " entries");
    }
    for (std::size_t c = 0; c < node.size(); ++c) {
      out.push_back(Real(node[c], where + "[" + std::to_string(c) + "]"));
    }
  }
  return out;
}

}  // namespace

json instance_to_json(const AuctionInstance& instance) {
  json doc;
  doc["sectors"] = instance.grid.sectors;
  doc["timesteps"] = instance.grid.timesteps;
  doc["budget"] = instance.budget;
  const auto values = instance.values.data();
  doc["values"] = std::vector<double>(values.begin(), values.end());
  json bidders = json::array();
  for (const auto& bidder : instance.bidders) {
    json entry;
    entry["id"] = bidder.id();
    entry["bid"] = bidder.bid.bid;
    if (bidder.bid.true_cost) entry["true_cost"] = *bidder.bid.true_cost;
    const auto probs = bidder.profile.data();
    entry["probs"] = std::vector<double>(probs.begin(), probs.end());
    bidders.push_back(std::move(entry));
  }
  doc["bidders"] = std::move(bidders);
  return doc;
}

AuctionInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("instance: expected an object");
  AuctionInstance instance;
  instance.grid.sectors = Count(Field(doc, "sectors", "instance"), "sectors");
  instance.grid.timesteps = Count(Field(doc, "timesteps", "instance"), "timesteps");
  instance.budget = Real(Field(doc, "budget", "instance"), "budget");
  instance.values =
      ValueMatrix(instance.grid, Matrix(Field(doc, "values", "instance"), instance.grid,
                                        "values"));
  const json& bidders = Field(doc, "bidders", "instance");
  if (!bidders.is_array()) throw InputError("bidders: expected an array");
  for (std::size_t k = 0; k < bidders.size(); ++k) {
    const std::string where = "bidders[" + std::to_string(k) + "]";
    const json& entry = bidders[k];
    if (!entry.is_object()) throw InputError(where + ": expected an object");
    const ParticipantId id = Count(Field(entry, "id", where), where + ".id");
    Bid bid{id, Real(Field(entry, "bid", where), where + ".bid"), std::nullopt};
    if (auto it = entry.find("true_cost"); it != entry.end()) {
      bid.true_cost = Real(*it, where + ".true_cost");
    }
    auto probs = Matrix(Field(entry, "probs", where), instance.grid, where + ".probs");
    instance.bidders.push_back({bid, MobilityProfile(id, instance.grid, std::move(probs))});
  }
  return validate_instance(std::move(instance));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& error) {
    throw InputError(path + ": " + error.what());
  }
}

AuctionInstance read_instance_file(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

void write_instance_file(const std::string& path, const AuctionInstance& instance) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << instance_to_json(instance).dump(2) << '\n';
}

json outcome_to_json(const AuctionOutcome& outcome) {
  json doc;
  doc["winners"] = outcome.winners;
  doc["marginals"] = outcome.marginals;
  json rewards = json::array();
  for (auto id : outcome.winners) {
    rewards.push_back({{"id", id}, {"reward", outcome.rewards.at(id)}});
  }
  doc["rewards"] = std::move(rewards);
  doc["achieved_value"] = outcome.achieved_value;
  doc["payments_total"] = outcome.payments_total;
  return doc;
}

json search_log_to_json(const SearchLog& log) {
  json probes = json::array();
  for (const auto& probe : log.probes) {
    probes.push_back({{"input_budget", probe.input_budget},
                      {"payment_sum", probe.payment_sum},
                      {"achieved_value", probe.achieved_value}});
  }
  return {{"probes", std::move(probes)},
          {"b_star", log.b_star},
          {"tvm_evaluations", log.tvm_evaluations},
          {"bracket_probes", log.bracket_probes},
          {"degenerate", log.degenerate},
          {"saturated", log.saturated},
          {"monotone", log.monotone}};
}

json property_report_to_json(const PropertyReport& report) {
  json checks = json::array();
  for (const auto& check : report.checks) {
    checks.push_back({{"name", check.name},
                      {"passed", check.passed},
                      {"hard", check.hard},
                      {"skipped", check.skipped},
                      {"detail", check.detail}});
  }
  return {{"checks", std::move(checks)}, {"hard_failure", report.hard_failure()}};
}

}  // namespace sensebid
