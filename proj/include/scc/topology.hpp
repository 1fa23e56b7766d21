/**************************************************************************
 * topology.hpp
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

// Network layout and the two placement phases: shares into helper caches
// (before users are known) and one-time transmission keys into user caches
// (after the user-to-cache association is revealed).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "combinatorics.hpp"
#include "gf2m.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "secret_share.hpp"

namespace scc {

class TopologyError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SystemParams {
  int n_files = 0;
  int n_users = 0;
  int n_caches = 0;
  int t = 0;
  Rational helper_cache_size{0};
  std::size_t file_bits = 0;

  /// Helper-cache memory implied by t: N t / (L - t).
  static Rational memory_for(int n_files, int n_caches, int t) {
    if (t == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(n_files) * t, n_caches - t);
  }

  static SystemParams make(int n_files, int n_users, int n_caches, int t, std::size_t file_bits) {
    if (n_caches < 1) throw TopologyError("need at least one helper cache");
    if (n_users < n_caches) throw TopologyError("need K >= number of caches");
    if (n_files < n_users) throw TopologyError("need N >= K");
    if (t < 0 || t > n_caches - 1) throw TopologyError("t must lie in {0, ..., L-1}");
    if (file_bits == 0) throw TopologyError("file size must be positive");
    return SystemParams{n_files, n_users, n_caches, t, memory_for(n_files, n_caches, t), file_bits};
  }

  /// Inverts M = N t / (L - t); M must correspond to an integer t.
  static SystemParams from_memory(int n_files, int n_users, int n_caches, Rational memory, std::size_t file_bits) {
    const Rational t = Rational(n_caches) * memory / (memory + Rational(n_files));
    if (t.denominator() != 1) throw TopologyError("memory " + to_fraction(memory) + " gives non-integer t");
    return make(n_files, n_users, n_caches, static_cast<int>(t.numerator()), file_bits);
  }
};

/// Users grouped by helper cache, caches labelled by non-increasing load.
class Association {
public:
  /// `groups[i]` lists, in service order, the users attached to input cache
  /// i + 1. Users must be exactly 1..K. Caches are relabelled by a stable
  /// sort on decreasing group size.
  static Association from_groups(std::vector<std::vector<int>> groups) {
    std::vector<int> seen;
    for (const auto& g : groups) seen.insert(seen.end(), g.begin(), g.end());
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] != static_cast<int>(i) + 1) throw TopologyError("users must form a permutation of 1..K");
    }
    if (groups.empty()) throw TopologyError("association has no caches");

    std::vector<int> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return groups[static_cast<std::size_t>(a)].size() > groups[static_cast<std::size_t>(b)].size(); });

    Association a;
    a.user_cache_.assign(seen.size() + 1, 0);
    for (std::size_t lambda = 0; lambda < order.size(); ++lambda) {
      auto& g = groups[static_cast<std::size_t>(order[lambda])];
      a.original_label_.push_back(order[lambda] + 1);
      a.profile_.push_back(static_cast<int>(g.size()));
      for (int u : g) a.user_cache_[static_cast<std::size_t>(u)] = static_cast<int>(lambda) + 1;
      a.groups_.push_back(std::move(g));
    }
    return a;
  }

  int n_caches() const { return static_cast<int>(groups_.size()); }
  int n_users() const { return static_cast<int>(user_cache_.size()) - 1; }

  /// U_lambda, 1-based cache label.
  const std::vector<int>& group(int lambda) const { return groups_.at(static_cast<std::size_t>(lambda - 1)); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

  /// Non-increasing group sizes.
  const std::vector<int>& profile() const { return profile_; }

  /// Input label of canonical cache lambda.
  int original_label(int lambda) const { return original_label_.at(static_cast<std::size_t>(lambda - 1)); }

  int cache_of(int user) const { return user_cache_.at(static_cast<std::size_t>(user)); }

  /// U_lambda(j), or 0 when cache lambda has fewer than j users.
  int user_at(int lambda, int j) const {
    const auto& g = group(lambda);
    return j <= static_cast<int>(g.size()) ? g[static_cast<std::size_t>(j - 1)] : 0;
  }

  /// Canonical text form: groups separated by ';', users by ','.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
      if (i) out += ';';
      for (std::size_t k = 0; k < groups_[i].size(); ++k) {
        if (k) out += ',';
        out += std::to_string(groups_[i][k]);
      }
    }
    return out;
  }

private:
  std::vector<std::vector<int>> groups_;
  std::vector<int> profile_;
  std::vector<int> original_label_;
  std::vector<int> user_cache_;
};

namespace detail {

inline std::vector<int> parse_id_list(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t\r");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw TopologyError("bad user id '" + tok + "'");
    }
    if (used != tok.size()) throw TopologyError("bad user id '" + tok + "'");
    ids.push_back(v);
  }
  return ids;
}

}  // namespace detail

/// One line per cache, comma-separated user ids. An empty line is a cache
/// with no users.
inline Association parse_association_lines(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) groups.push_back(detail::parse_id_list(line));
  return Association::from_groups(std::move(groups));
}

/// Groups separated by ';', users by ','.
inline Association parse_association_inline(const std::string& text) {
  std::vector<std::vector<int>> groups;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(';', start);
    groups.push_back(detail::parse_id_list(text.substr(start, end == std::string::npos ? end : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return Association::from_groups(std::move(groups));
}

// ---------------------------------------------------------------------------
// Helper cache placement

struct CachedShare {
  int file_index = 0;
  IdSet label;
  std::uint64_t share_rank = 0;
  Symbols data;
};

struct HelperCacheContent {
  int cache_index = 0;
  std::vector<CachedShare> shares;

  std::size_t stored_bits(int m) const {
    std::size_t bits = 0;
    for (const auto& s : shares) bits += s.data.size() * static_cast<std::size_t>(m);
    return bits;
  }

  const CachedShare* find(int file_index, const IdSet& label) const {
    for (const auto& s : shares) {
      if (s.file_index == file_index && s.label == label) return &s;
    }
    return nullptr;
  }
};

/// Cache lambda receives every share whose label contains lambda.
inline std::vector<HelperCacheContent> place_shares(const std::vector<ShareVector>& library,
                                                    const SystemParams& params, const SharingParams& sharing) {
  if (params.t == 0) throw TopologyError("t = 0 stores nothing in helper caches; use the t = 0 delivery");
  if (static_cast<int>(library.size()) != params.n_files) throw TopologyError("need one share vector per file");
  if (sharing.t != params.t || sharing.lambda_caches != params.n_caches) {
    throw TopologyError("sharing parameters do not match the system");
  }
  const SubsetIndex idx = sharing.share_index();
  const auto labels = idx.all();
  std::vector<HelperCacheContent> caches;
  for (int lambda = 1; lambda <= params.n_caches; ++lambda) {
    HelperCacheContent c{lambda, {}};
    for (const auto& sv : library) {
      for (std::size_t r = 0; r < labels.size(); ++r) {
        if (contains(labels[r], lambda)) c.shares.push_back({sv.file_index, labels[r], r + 1, sv.shares[r]});
      }
    }
    // N C(L-1, t-1) shares of B / C(L-1, t) bits each must equal M B.
    const Rational stored(static_cast<std::int64_t>(c.stored_bits(sharing.field.m)));
    if (stored != params.helper_cache_size * Rational(static_cast<std::int64_t>(sharing.file_bits()))) {
      throw std::logic_error("helper cache occupancy differs from M B");
    }
    caches.push_back(std::move(c));
  }
  return caches;
}

// ---------------------------------------------------------------------------
// Rounds and serving sets

/// R_j for j = 1..L_1: the j-th user of every cache that has one.
inline std::vector<IdSet> rounds(const Association& assoc) {
  const int n_rounds = assoc.profile().empty() ? 0 : assoc.profile().front();
  std::vector<IdSet> out;
  for (int j = 1; j <= n_rounds; ++j) {
    IdSet r;
    for (int lambda = 1; lambda <= assoc.n_caches(); ++lambda) {
      if (int u = assoc.user_at(lambda, j)) r.push_back(u);
    }
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
  }
  return out;
}

struct ServingSet {
  int round = 0;
  IdSet caches;  // Q
  IdSet users;   // chi_Q, sorted
  int multiplicity = 1;

  friend bool operator==(const ServingSet&, const ServingSet&) = default;
};

/// Non-empty chi_Q for every (t+1)-subset Q in lexicographic order. Repeated
/// chi within the round get multiplicity 1, 2, ... in order of Q.
inline std::vector<ServingSet> serving_sets(const Association& assoc, int t, int round) {
  if (assoc.profile().empty() || round < 1 || round > assoc.profile().front()) {
    throw std::out_of_range("round out of range");
  }
  std::vector<ServingSet> out;
  std::map<IdSet, int> seen;
  for (const IdSet& q : SubsetIndex(assoc.n_caches(), t + 1).all()) {
    IdSet chi;
    for (int lambda : q) {
      if (int u = assoc.user_at(lambda, round)) chi.push_back(u);
    }
    if (chi.empty()) continue;
    std::sort(chi.begin(), chi.end());
    const int l = ++seen[chi];
    out.push_back({round, q, std::move(chi), l});
  }
  return out;
}

inline std::vector<ServingSet> all_serving_sets(const Association& assoc, int t) {
  std::vector<ServingSet> out;
  const int n_rounds = assoc.profile().empty() ? 0 : assoc.profile().front();
  for (int j = 1; j <= n_rounds; ++j) {
    auto s = serving_sets(assoc, t, j);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Key placement

struct KeyEntry {
  ServingSet slot;
  Symbols payload;
};

class KeyStore {
public:
  using Key = std::tuple<int, IdSet, int>;

  KeyStore() = default;

  /// Keys are attached to slots in order; `payloads` must match in count.
  KeyStore(std::vector<ServingSet> slots, std::vector<Symbols> payloads) {
    if (slots.size() != payloads.size()) throw std::invalid_argument("one payload per key slot required");
    for (std::size_t i = 0; i < slots.size(); ++i) {
      Key k{slots[i].round, slots[i].users, slots[i].multiplicity};
      if (!index_.emplace(k, entries_.size()).second) throw std::logic_error("duplicate key slot");
      entries_.push_back({std::move(slots[i]), std::move(payloads[i])});
    }
  }

  const std::vector<KeyEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const KeyEntry* find(int round, const IdSet& users, int multiplicity) const {
    auto it = index_.find(Key{round, users, multiplicity});
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  /// Keys whose serving set contains `user`, in store order.
  std::vector<KeyEntry> held_by(int user) const {
    std::vector<KeyEntry> out;
    for (const auto& e : entries_) {
      if (contains(e.slot.users, user)) out.push_back(e);
    }
    return out;
  }

private:
  std::vector<KeyEntry> entries_;
  std::map<Key, std::size_t> index_;
};

/// sum_{r=1}^{L-t} L_r C(L-r, t), the number of transmission keys.
inline std::uint64_t expected_key_count(const std::vector<int>& profile, int t) {
  const int lambda = static_cast<int>(profile.size());
  std::uint64_t total = 0;
  for (int r = 1; r <= lambda - t; ++r) total += static_cast<std::uint64_t>(profile[static_cast<std::size_t>(r - 1)]) * binomial(lambda - r, t);
  return total;
}

/// One key of `symbols` m-bit symbols per serving-set slot, slot i drawn from
/// its own stream.
inline KeyStore place_keys(const Association& assoc, const SystemParams& params, std::size_t symbols, int m,
                           std::uint64_t seed) {
  if (params.t == 0) throw TopologyError("t = 0 uses per-user whole-file keys");
  auto slots = all_serving_sets(assoc, params.t);
  std::vector<Symbols> payloads;
  payloads.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    payloads.push_back(SymbolStream(seed, StreamDomain::TransmissionKey, i).take(symbols, m));
  }
  KeyStore ks(std::move(slots), std::move(payloads));
  if (ks.size() != expected_key_count(assoc.profile(), params.t)) throw std::logic_error("key count mismatch");
  return ks;
}

/// t = 0: user k holds a whole-file key T_k, stored as slot (1, {}, {k}, 1).
inline std::vector<ServingSet> t0_key_slots(int n_users) {
  std::vector<ServingSet> slots;
  for (int k = 1; k <= n_users; ++k) slots.push_back({1, {}, {k}, 1});
  return slots;
}

inline KeyStore place_keys_t0(int n_users, std::size_t symbols, int m, std::uint64_t seed) {
  auto slots = t0_key_slots(n_users);
  std::vector<Symbols> payloads;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    payloads.push_back(SymbolStream(seed, StreamDomain::TransmissionKey, i).take(symbols, m));
  }
  return KeyStore(std::move(slots), std::move(payloads));
}

}  // namespace scc
