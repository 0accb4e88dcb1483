// Copyright 2026 The Duelbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUELBENCH_PARALLEL_HPP_
#define DUELBENCH_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace duelbench {

/// Worker count: DUELBENCH_THREADS when set, hardware concurrency otherwise.
inline int thread_budget(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DUELBENCH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items
/// must not depend on execution order; results keyed by i stay
/// deterministic regardless of scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn,
                         int threads = 0) {
  int workers = std::min(thread_budget(threads), std::max(count, 1));
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace duelbench

#endif  // DUELBENCH_PARALLEL_HPP_
