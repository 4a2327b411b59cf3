/*
 * Copyright 2026 The meterkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <numeric>
#include <vector>

namespace meterkit {

// Unit-cost Levenshtein distance (insert, delete, substitute), two-row DP.
template <typename SeqA, typename SeqB>
std::size_t edit_distance(const SeqA& a, const SeqB& b) {
  const std::size_t n = std::size(a);
  const std::size_t m = std::size(b);
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  auto ai = std::begin(a);
  for (std::size_t i = 1; i <= n; ++i, ++ai) {
    cur[0] = i;
    auto bj = std::begin(b);
    for (std::size_t j = 1; j <= m; ++j, ++bj) {
      const std::size_t substitute = prev[j - 1] + (*ai == *bj ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace meterkit
