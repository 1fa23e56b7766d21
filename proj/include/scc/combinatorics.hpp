/**************************************************************************
 * combinatorics.hpp
 *
 * Copyright 2026 The scc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace scc {

/// Sorted set of 1-based ids (cache labels or user ids).
using IdSet = std::vector<int>;

/// C(n, k); zero when k < 0 or k > n.
constexpr std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Lexicographic ranking of the size-`size` subsets of {1..universe}.
/// Ranks are 1-based: {1..size} has rank 1.
class SubsetIndex {
public:
  SubsetIndex(int universe, int size) : universe_(universe), size_(size) {
    if (universe < 0 || size < 0 || size > universe) {
      throw std::invalid_argument("subset index needs 0 <= size <= universe");
    }
  }

  int universe() const { return universe_; }
  int size() const { return size_; }
  std::uint64_t count() const { return binomial(universe_, size_); }

  std::uint64_t rank(const IdSet& subset) const {
    if (static_cast<int>(subset.size()) != size_) {
      throw std::invalid_argument("subset has size " + std::to_string(subset.size()) + ", expected " +
                                  std::to_string(size_));
    }
    // Count subsets that precede `subset`: at position i, every smaller
    // admissible element gives C(remaining, slots left) earlier subsets.
    std::uint64_t r = 0;
    int prev = 0;
    for (int i = 0; i < size_; ++i) {
      const int e = subset[static_cast<std::size_t>(i)];
      if (e <= prev || e > universe_) throw std::invalid_argument("subset must be strictly increasing within range");
      for (int c = prev + 1; c < e; ++c) r += binomial(universe_ - c, size_ - i - 1);
      prev = e;
    }
    return r + 1;
  }

  IdSet unrank(std::uint64_t rank) const {
    if (rank < 1 || rank > count()) throw std::out_of_range("subset rank out of range");
    std::uint64_t rem = rank - 1;
    IdSet out;
    out.reserve(static_cast<std::size_t>(size_));
    int c = 1;
    for (int i = 0; i < size_; ++i) {
      for (;; ++c) {
        const std::uint64_t block = binomial(universe_ - c, size_ - i - 1);
        if (rem < block) break;
        rem -= block;
      }
      out.push_back(c++);
    }
    return out;
  }

  /// All subsets in lexicographic order.
  std::vector<IdSet> all() const {
    std::vector<IdSet> out;
    out.reserve(static_cast<std::size_t>(count()));
    IdSet cur(static_cast<std::size_t>(size_));
    for (int i = 0; i < size_; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      out.push_back(cur);
      int i = size_ - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == universe_ - size_ + i + 1) --i;
      if (i < 0) break;
      ++cur[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size_; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
  }

private:
  int universe_;
  int size_;
};

/// Calls fn(const std::vector<std::size_t>&) for every k-subset of {0..n-1}
/// in lexicographic order; stops early and returns false if fn returns false.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    if (!fn(static_cast<const std::vector<std::size_t>&>(cur))) return false;
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

inline bool contains(const IdSet& s, int id) { return std::binary_search(s.begin(), s.end(), id); }

inline IdSet without(const IdSet& s, int id) {
  IdSet out;
  out.reserve(s.size());
  for (int x : s) {
    if (x != id) out.push_back(x);
  }
  return out;
}

inline std::string format_ids(const IdSet& s, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace scc
