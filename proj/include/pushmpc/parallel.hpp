// Copyright 2026 The pushmpc Authors
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

#ifndef PUSHMPC_PARALLEL_HPP_
#define PUSHMPC_PARALLEL_HPP_

#include <exception>
#include <thread>
#include <vector>

namespace pushmpc {

// Runs fn(i) for i in [0, n) split contiguously over the given number of
// threads. Each index writes only its own output slot, so the result is
// identical for any thread count.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (n <= 0) return;
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  std::vector<std::exception_ptr> errors(threads);
  auto chunk = [&](int worker) {
    const int lo = static_cast<int>(static_cast<long long>(n) * worker / threads);
    const int hi = static_cast<int>(static_cast<long long>(n) * (worker + 1) / threads);
    try {
      for (int i = lo; i < hi; ++i) fn(i);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  for (int w = 1; w < threads; ++w) pool.emplace_back(chunk, w);
  chunk(0);
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline int default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace pushmpc

#endif  // PUSHMPC_PARALLEL_HPP_
