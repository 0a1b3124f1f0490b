// Copyright 2026 The catsampler authors
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

#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace catsampler {

/// Worker count: CATSAMPLER_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("CATSAMPLER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is
/// handled by exactly one worker, so results written per-index are identical
/// for any worker count.
template <typename Fn>
void parallel_for_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  const std::size_t base = n / chunks;
  const std::size_t extra = n % chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < extra ? 1 : 0);
    const std::size_t end = begin + len;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace catsampler
