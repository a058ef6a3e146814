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

// Small hand-checkable instances shared by the tests, the acceptance run
// and the CLI.

#ifndef SENSEBID_FIXTURES_HPP_
#define SENSEBID_FIXTURES_HPP_

#include "sensebid/model.hpp"

namespace sensebid {

// Four sectors, one timestep, V = {.3, .2, .1, .4}, budget 20 and bidders
//   1: bid 10, p = {.2, .1, .3, .4}
//   2: bid  8, p = {0, .8, .05, .15}
//   3: bid 12, p = {.4, .2, 0, .4}
// True costs equal the bids.
AuctionInstance four_sector_example();

}  // namespace sensebid

#endif  // SENSEBID_FIXTURES_HPP_
