/**************************************************************************
 * fixtures.hpp
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

#include <functional>
#include <vector>

#include "scc/protocol.hpp"

namespace scc::fixture {

inline Association two_cache() { return Association::from_groups({{1, 2}, {3}}); }
inline Association four_cache() { return Association::from_groups({{1, 2, 3}, {4, 5}, {6, 7}, {8}}); }

/// Users 1..K assigned to caches in order of the profile.
inline Association consecutive(const std::vector<int>& profile) {
  std::vector<std::vector<int>> groups;
  int next = 1;
  for (int size : profile) {
    groups.emplace_back();
    for (int i = 0; i < size; ++i) groups.back().push_back(next++);
  }
  return Association::from_groups(groups);
}

/// Every map from K users to L caches, empty caches allowed.
inline void for_each_association(int n_users, int n_caches, const std::function<void(const Association&)>& fn) {
  std::vector<int> cache_of(static_cast<std::size_t>(n_users), 0);
  while (true) {
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n_caches));
    for (int k = 0; k < n_users; ++k) groups[static_cast<std::size_t>(cache_of[static_cast<std::size_t>(k)])].push_back(k + 1);
    fn(Association::from_groups(groups));
    int i = 0;
    while (i < n_users && ++cache_of[static_cast<std::size_t>(i)] == n_caches) cache_of[static_cast<std::size_t>(i++)] = 0;
    if (i == n_users) return;
  }
}

/// Smallest file size that fills one symbol per sub-file.
inline std::size_t one_symbol_bits(int n_caches, int t) {
  const auto sys = SystemParams::make(n_caches, n_caches, n_caches, t, 1);
  const auto scheme = SchemeParams::make(sys);
  return scheme.n_subfiles * static_cast<std::size_t>(scheme.m());
}

}  // namespace scc::fixture
