// Copyright 2026 The Catmap Authors.
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

#ifndef CATMAP_PARALLEL_H_
#define CATMAP_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace catmap {

// Runs fn(i) for every i in [0, n) on up to `workers` threads. Work is handed
// out in fixed-size chunks; callers write results into slot i so the output
// never depends on scheduling. The first exception thrown by any worker is
// rethrown on the calling thread.
template <typename Fn>
void ParallelFor(size_t n, int workers, Fn &&fn) {
  constexpr size_t kChunk = 1024;
  if (workers <= 1 || n <= kChunk) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  size_t threads = std::min<size_t>(workers, (n + kChunk - 1) / kChunk);
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&]() {
    for (;;) {
      size_t begin = next.fetch_add(kChunk);
      if (begin >= n) return;
      size_t end = std::min(n, begin + kChunk);
      try {
        for (size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(body);
  body();
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace catmap

#endif  // CATMAP_PARALLEL_H_
