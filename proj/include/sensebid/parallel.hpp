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

// Deterministic fork-join over index ranges. Each job receives a fixed
// contiguous chunk, so results written per index do not depend on `jobs`.

#ifndef SENSEBID_PARALLEL_HPP_
#define SENSEBID_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sensebid {

// Calls fn(begin, end) on up to `jobs` disjoint chunks covering [0, n).
// The first exception thrown by any chunk is rethrown after all finish.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs - 1);
    auto run_chunk = [&](std::size_t job) {
      const std::size_t begin = n * job / jobs;
      const std::size_t end = n * (job + 1) / jobs;
      try {
        fn(begin, end);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    };
    for (std::size_t job = 1; job < jobs; ++job) workers.emplace_back(run_chunk, job);
    run_chunk(0);
  }
  for (auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  parallel_chunks(n, jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace sensebid

#endif  // SENSEBID_PARALLEL_HPP_
