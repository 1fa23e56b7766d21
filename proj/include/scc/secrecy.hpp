/**************************************************************************
 * secrecy.hpp
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

// Exhaustive secrecy check on tiny instances.
//
// Every realization of (files, encryption keys, transmission keys) is
// equally likely. For each one the real placement and delivery code is run
// and, for every user k, the pair (other files, everything k observes) is
// tallied. The leakage I(W^{[N] \ d_k}; Z_k, X_d) is zero exactly when the
// tallied joint distribution factorizes, which is decided on integer counts:
//
//     c(w, o) * total == c(w) * c(o)   for every observed (w, o).
//
// The mutual information in bits is also reported, for the non-zero case.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "protocol.hpp"
#include "topology.hpp"

namespace scc {

class InstanceTooLargeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxBruteForceBits = 24;

struct UserSecrecy {
  int user = 0;
  bool independent = true;   // exact: joint distribution factorizes
  double max_mi_bits = 0.0;  // max over the demand vectors checked
};

struct SecrecyReport {
  std::string instance;
  std::size_t random_bits = 0;
  std::size_t demand_vectors = 0;
  std::vector<UserSecrecy> users;

  bool perfect() const {
    for (const auto& u : users) {
      if (!u.independent) return false;
    }
    return true;
  }
  double max_mi_bits() const {
    double m = 0.0;
    for (const auto& u : users) m = std::max(m, u.max_mi_bits);
    return m;
  }
};

/// All injective demand vectors [K] -> [N], lexicographic.
inline std::vector<DemandVector> all_distinct_demands(int n_files, int n_users) {
  std::vector<DemandVector> out;
  DemandVector cur;
  std::vector<bool> used(static_cast<std::size_t>(n_files) + 1, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.d.size()) == n_users) {
      out.push_back(cur);
      return;
    }
    for (int n = 1; n <= n_files; ++n) {
      if (used[static_cast<std::size_t>(n)]) continue;
      used[static_cast<std::size_t>(n)] = true;
      cur.d.push_back(n);
      self(self);
      cur.d.pop_back();
      used[static_cast<std::size_t>(n)] = false;
    }
  };
  rec(rec);
  return out;
}

inline std::size_t key_slot_count(const SchemeParams& scheme, const Association& assoc) {
  return scheme.system.t == 0 ? static_cast<std::size_t>(scheme.system.n_users)
                              : all_serving_sets(assoc, scheme.system.t).size();
}

/// Uniform random bits per realization: files, encryption keys, transmission keys.
inline std::size_t brute_force_bits(const SchemeParams& scheme, const Association& assoc) {
  const std::size_t enc = scheme.sharing ? scheme.sharing->n_enc_keys : 0;
  const std::size_t symbols = static_cast<std::size_t>(scheme.system.n_files) * (scheme.n_subfiles + enc) * scheme.symbols +
                              key_slot_count(scheme, assoc) * scheme.symbols;
  return symbols * static_cast<std::size_t>(scheme.m());
}

namespace detail {

// Secrets all have the same byte length within one tally, so the joint key
// is the plain concatenation and splits at that length.
struct Tally {
  std::unordered_map<std::string, std::uint64_t> joint;
  std::unordered_map<std::string, std::uint64_t> secret;
  std::unordered_map<std::string, std::uint64_t> observed;
  std::uint64_t total = 0;
  std::size_t secret_len = 0;

  void add(const std::string& w, const std::string& o) {
    if (total == 0) secret_len = w.size();
    if (w.size() != secret_len) throw std::logic_error("secret length varies");
    ++joint[w + o];
    ++secret[w];
    ++observed[o];
    ++total;
  }

  bool independent() const {
    for (const auto& [key, c] : joint) {
      const unsigned __int128 lhs = static_cast<unsigned __int128>(c) * total;
      const unsigned __int128 rhs = static_cast<unsigned __int128>(secret.at(key.substr(0, secret_len))) *
                                    observed.at(key.substr(secret_len));
      if (lhs != rhs) return false;
    }
    return true;
  }

  double mi_bits() const {
    double mi = 0.0;
    const double T = static_cast<double>(total);
    for (const auto& [key, c] : joint) {
      const double cw = static_cast<double>(secret.at(key.substr(0, secret_len)));
      const double co = static_cast<double>(observed.at(key.substr(secret_len)));
      mi += static_cast<double>(c) / T * std::log2(static_cast<double>(c) * T / (cw * co));
    }
    return mi < 0.0 ? 0.0 : mi;
  }
};

inline void append_symbols(std::string& out, const Symbols& s) {
  for (Elem e : s) {
    out.push_back(static_cast<char>((e.value() >> 8) & 0xff));
    out.push_back(static_cast<char>(e.value() & 0xff));
  }
}

}  // namespace detail

inline SecrecyReport verify_secrecy_bruteforce(const SchemeParams& scheme, const Association& assoc,
                                               const std::vector<DemandVector>& demands,
                                               Sabotage sabotage = Sabotage::None) {
  const SystemParams& sys = scheme.system;
  const std::size_t bits = brute_force_bits(scheme, assoc);
  if (bits > kMaxBruteForceBits) {
    throw InstanceTooLargeError("instance needs " + std::to_string(bits) + " random bits; limit is " +
                                std::to_string(kMaxBruteForceBits));
  }
  for (const auto& d : demands) d.validate(sys.n_files, sys.n_users);

  const int m = scheme.m();
  const std::size_t s = scheme.symbols;
  const std::size_t P = scheme.n_subfiles;
  const std::size_t Q = scheme.sharing ? scheme.sharing->n_enc_keys : 0;
  const auto slots = sys.t == 0 ? t0_key_slots(sys.n_users) : all_serving_sets(assoc, sys.t);
  const std::size_t n_symbols = bits / static_cast<std::size_t>(m);
  const std::uint32_t mask = (1u << m) - 1;

  std::vector<std::vector<detail::Tally>> tallies(demands.size(), std::vector<detail::Tally>(static_cast<std::size_t>(sys.n_users)));

  for (std::uint64_t realization = 0; realization < (std::uint64_t{1} << bits); ++realization) {
    std::size_t next = 0;
    auto take = [&]() {
      Symbols out(s);
      for (auto& e : out) e = Elem(static_cast<std::uint32_t>(realization >> (m * next++)) & mask);
      return out;
    };
    std::vector<FileData> files;
    std::vector<EncryptionRandomness> randomness;
    for (int n = 1; n <= sys.n_files; ++n) {
      FileData f{n, {}, sys.file_bits};
      for (std::size_t p = 0; p < P; ++p) f.subfiles.push_back(take());
      files.push_back(std::move(f));
    }
    for (int n = 1; n <= sys.n_files; ++n) {
      EncryptionRandomness r{n, {}};
      for (std::size_t q = 0; q < Q; ++q) r.enc_keys.push_back(take());
      randomness.push_back(std::move(r));
    }
    std::vector<Symbols> payloads;
    for (std::size_t i = 0; i < slots.size(); ++i) payloads.push_back(take());
    if (next != n_symbols) throw std::logic_error("realization layout mismatch");

    const Deployment dep = place(scheme, assoc, files, std::move(randomness), KeyStore(slots, std::move(payloads)), sabotage);

    for (std::size_t di = 0; di < demands.size(); ++di) {
      const Transcript tx = deliver(demands[di], dep);
      for (int k = 1; k <= sys.n_users; ++k) {
        const int own = demands[di].of(k);
        std::string w;
        for (const auto& f : files) {
          if (f.file_index == own) continue;
          for (const auto& sub : f.subfiles) detail::append_symbols(w, sub);
        }
        std::string o;
        if (!dep.caches.empty()) {
          for (const auto& cs : dep.caches[static_cast<std::size_t>(assoc.cache_of(k) - 1)].shares) {
            detail::append_symbols(o, cs.data);
          }
        }
        for (const auto& key : dep.keys.held_by(k)) detail::append_symbols(o, key.payload);
        for (const auto& x : tx.transmissions) detail::append_symbols(o, x.payload);
        tallies[di][static_cast<std::size_t>(k - 1)].add(w, o);
      }
    }
  }

  SecrecyReport rep;
  rep.instance = "N=" + std::to_string(sys.n_files) + " K=" + std::to_string(sys.n_users) +
                 " L=" + std::to_string(sys.n_caches) + " t=" + std::to_string(sys.t) + " m=" + std::to_string(m) +
                 " s=" + std::to_string(s) + " association=" + assoc.to_string() + " sabotage=" + to_string(sabotage);
  rep.random_bits = bits;
  rep.demand_vectors = demands.size();
  for (int k = 1; k <= sys.n_users; ++k) {
    UserSecrecy u{k, true, 0.0};
    for (std::size_t di = 0; di < demands.size(); ++di) {
      const auto& t = tallies[di][static_cast<std::size_t>(k - 1)];
      if (!t.independent()) {
        u.independent = false;
        u.max_mi_bits = std::max(u.max_mi_bits, t.mi_bits());
      }
    }
    rep.users.push_back(u);
  }
  return rep;
}

}  // namespace scc
