// Copyright 2026 The Trailforge Authors
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

#ifndef TRAILFORGE_WINDOW_STREAM_HPP_
#define TRAILFORGE_WINDOW_STREAM_HPP_

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <thread>
#include <vector>

namespace tf {

struct WindowStreamStats {
  long loads = 0;
  int peak_resident = 0;
};

// Streams items [0, item_count) through overlapping windows that produce
// outputs [0, output_count). loader(i) is called exactly once per item index
// in increasing order; process(n, items) receives the window
// [first(n), last(n)] for output n. Items are released once every output
// that can reach them has completed, so at most window-width plus in-flight
// items are resident. Outputs must not depend on worker count.
template <typename Item>
WindowStreamStats run_window_stream(
    int output_count, int item_count, int threads,
    const std::function<std::pair<int, int>(int)>& window,
    const std::function<Item(int)>& loader,
    const std::function<void(int, std::span<const std::shared_ptr<const Item>>)>& process,
    int max_resident = 0) {
  WindowStreamStats stats;
  if (output_count <= 0) return stats;
  threads = std::max(1, std::min(threads, output_count));
  if (max_resident <= 0) max_resident = item_count;

  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::shared_ptr<const Item>> slots(item_count);
  std::set<int> active;
  int next_claim = 0;
  int next_load = 0;
  int resident = 0;
  bool loading = false;
  bool aborted = false;
  std::exception_ptr error;

  auto evict_below = [&](int keep_from) {
    for (int i = 0; i < keep_from && i < item_count; ++i) {
      if (slots[i]) {
        slots[i].reset();
        --resident;
      }
    }
  };

  auto worker = [&] {
    std::unique_lock<std::mutex> lock(mu);
    for (;;) {
      if (aborted || next_claim >= output_count) return;
      // A claim may not widen the resident span past the budget while older
      // outputs still hold their windows; otherwise one slow worker lets the
      // others drag the whole sequence into memory.
      if (!active.empty()) {
        const int span = window(next_claim).second - window(*active.begin()).first + 1;
        if (span > max_resident) {
          cv.wait(lock);
          continue;
        }
      }
      const int n = next_claim++;
      active.insert(n);
      const auto [first, last] = window(n);

      while (next_load <= last && !aborted) {
        if (loading) {
          cv.wait(lock);
          continue;
        }
        loading = true;
        const int idx = next_load;
        lock.unlock();
        std::shared_ptr<const Item> item;
        try {
          item = std::make_shared<const Item>(loader(idx));
        } catch (...) {
          lock.lock();
          if (!error) error = std::current_exception();
          aborted = true;
          loading = false;
          cv.notify_all();
          active.erase(n);
          return;
        }
        lock.lock();
        slots[idx] = std::move(item);
        ++next_load;
        ++resident;
        ++stats.loads;
        stats.peak_resident = std::max(stats.peak_resident, resident);
        loading = false;
        cv.notify_all();
      }
      if (aborted) {
        active.erase(n);
        return;
      }

      std::vector<std::shared_ptr<const Item>> items(slots.begin() + first,
                                                     slots.begin() + last + 1);
      lock.unlock();
      try {
        process(n, std::span<const std::shared_ptr<const Item>>(items));
      } catch (...) {
        lock.lock();
        if (!error) error = std::current_exception();
        aborted = true;
        cv.notify_all();
        active.erase(n);
        return;
      }
      items.clear();

      lock.lock();
      active.erase(n);
      const int min_needed = active.empty() ? next_claim : *active.begin();
      if (min_needed < output_count) {
        evict_below(window(min_needed).first);
      } else {
        evict_below(item_count);
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return stats;
}

}  // namespace tf

#endif  // TRAILFORGE_WINDOW_STREAM_HPP_
