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

// JSON forms of instances, outcomes, search logs and property reports.
//
// Instance files hold `sectors`, `timesteps`, `budget`, `values` and
// `bidders`, each bidder being {id, bid, true_cost?, probs}. `values` and
// `probs` are row-major sector x timestep, either flat or nested one array
// per sector. Reals are written in shortest round-trip form, so a write
// followed by a read restores every value bit for bit.

#ifndef SENSEBID_IO_HPP_
#define SENSEBID_IO_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sensebid/hvm.hpp"
#include "sensebid/model.hpp"
#include "sensebid/oracle.hpp"

namespace sensebid {

// Unreadable file, malformed JSON or a field of the wrong shape.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const AuctionInstance& instance);

// Parses and validates. Throws InputError for shape problems and
// InstanceError for violated invariants.
AuctionInstance instance_from_json(const nlohmann::json& doc);

AuctionInstance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const AuctionInstance& instance);

nlohmann::json outcome_to_json(const AuctionOutcome& outcome);
nlohmann::json search_log_to_json(const SearchLog& log);
nlohmann::json property_report_to_json(const PropertyReport& report);

// Reads a whole JSON document; throws InputError on failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace sensebid

#endif  // SENSEBID_IO_HPP_
