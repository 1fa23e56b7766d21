/**************************************************************************
 * protocol.hpp
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

// Delivery phase and per-user decoding.
//
// Round j serves the j-th user of every cache that has one. For each
// (t+1)-subset Q of caches with non-empty serving set chi_Q the server sends
//
//     x = XOR_{lambda in Q, U_lambda(j) in chi_Q} S^{d_{U_lambda(j)}}_{Q \ {lambda}}  XOR  T^l_{chi_Q}
//
// A user in chi_Q removes the key and the shares it caches and is left with
// the one share of its own file that its cache lacks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "gf2m.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "secret_share.hpp"
#include "topology.hpp"

namespace scc {

class DemandError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Sabotage {
  None,
  NoKeys,              // transmissions sent without the one-time key
  NoSharesEncryption,  // encryption keys V forced to zero before sharing
};

inline std::string to_string(Sabotage s) {
  switch (s) {
    case Sabotage::None: return "none";
    case Sabotage::NoKeys: return "no-keys";
    case Sabotage::NoSharesEncryption: return "no-shares-encryption";
  }
  return "none";
}

inline Sabotage parse_sabotage(const std::string& s) {
  if (s == "none") return Sabotage::None;
  if (s == "no-keys") return Sabotage::NoKeys;
  if (s == "no-shares-encryption") return Sabotage::NoSharesEncryption;
  throw std::invalid_argument("unknown sabotage mode '" + s + "'");
}

/// d[k - 1] is the file requested by user k.
struct DemandVector {
  std::vector<int> d;

  int of(int user) const { return d.at(static_cast<std::size_t>(user - 1)); }

  void validate(int n_files, int n_users) const {
    if (static_cast<int>(d.size()) != n_users) throw DemandError("demand vector must have one entry per user");
    std::vector<int> s = d;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DemandError("distinct demands required");
    if (!s.empty() && (s.front() < 1 || s.back() > n_files)) throw DemandError("demand out of range");
  }

  static DemandVector identity(int n_users) {
    DemandVector v;
    for (int k = 1; k <= n_users; ++k) v.d.push_back(k);
    return v;
  }

  friend bool operator==(const DemandVector&, const DemandVector&) = default;
};

/// Everything fixed before the delivery phase: system, field and symbol
/// layout. For t = 0 there is no sharing and a file is a single sub-file.
struct SchemeParams {
  SystemParams system;
  std::optional<SharingParams> sharing;
  FieldParams field;
  std::size_t n_subfiles = 1;
  std::size_t symbols = 1;

  static SchemeParams make(const SystemParams& sys, std::optional<int> m = std::nullopt) {
    SchemeParams p;
    p.system = sys;
    if (sys.t >= 1) {
      const std::size_t parts = binomial(sys.n_caches - 1, sys.t);
      const FieldParams probe =
          m ? FieldParams::with_default_modulus(*m) : FieldParams::smallest_with_size(2 * binomial(sys.n_caches, sys.t));
      p.sharing = SharingParams::make(sys.n_caches, sys.t, symbols_needed(sys.file_bits, parts, probe.m), probe.m);
      p.field = p.sharing->field;
      p.n_subfiles = p.sharing->n_subfiles;
      p.symbols = p.sharing->symbols_per_subfile;
    } else {
      p.field = m ? FieldParams::with_default_modulus(*m) : FieldParams::smallest_with_size(2);
      p.n_subfiles = 1;
      p.symbols = symbols_needed(sys.file_bits, 1, p.field.m);
    }
    return p;
  }

  int m() const { return field.m; }
  std::size_t payload_bits() const { return symbols * static_cast<std::size_t>(field.m); }
  /// Padded file size; the unit in which rates are measured.
  std::size_t padded_file_bits() const { return n_subfiles * payload_bits(); }
};

inline FileData make_scheme_file(int file_index, std::span<const std::uint8_t> bytes, std::size_t bit_length,
                                 const SchemeParams& scheme) {
  return FileData{file_index, split_bits(bytes, bit_length, scheme.n_subfiles, scheme.symbols, scheme.m()),
                  bit_length};
}

/// Deterministic pseudo-random library: file n is file_bits bits from its own
/// stream.
inline std::vector<FileData> random_library(const SchemeParams& scheme, std::uint64_t seed) {
  const std::size_t bits = scheme.system.file_bits;
  std::vector<FileData> out;
  for (int n = 1; n <= scheme.system.n_files; ++n) {
    SymbolStream stream(seed, StreamDomain::FileContent, static_cast<std::uint64_t>(n));
    std::vector<std::uint8_t> bytes((bits + 7) / 8);
    for (auto& b : bytes) b = stream.next_byte();
    if (bits % 8) bytes.back() &= static_cast<std::uint8_t>(0xff00u >> (bits % 8));
    out.push_back(make_scheme_file(n, bytes, bits, scheme));
  }
  return out;
}

/// Server state after both placement phases.
struct Deployment {
  SchemeParams scheme;
  Association assoc;
  std::vector<FileData> files;
  std::vector<ShareVector> library;         // empty when t = 0
  std::vector<HelperCacheContent> caches;   // empty when t = 0
  KeyStore keys;
  std::uint64_t seed = 0;
  Sabotage sabotage = Sabotage::None;
};

/// Placement from explicit randomness. `randomness` is ignored for t = 0.
inline Deployment place(const SchemeParams& scheme, const Association& assoc, std::vector<FileData> files,
                        std::vector<EncryptionRandomness> randomness, KeyStore keys, Sabotage sabotage = Sabotage::None) {
  const SystemParams& sys = scheme.system;
  if (assoc.n_caches() != sys.n_caches || assoc.n_users() != sys.n_users) {
    throw TopologyError("association does not match the system size");
  }
  if (static_cast<int>(files.size()) != sys.n_files) throw TopologyError("library size mismatch");
  Deployment d{scheme, assoc, std::move(files), {}, {}, std::move(keys), 0, sabotage};
  if (sys.t >= 1) {
    if (sabotage == Sabotage::NoSharesEncryption) {
      for (auto& r : randomness) {
        for (auto& v : r.enc_keys) std::fill(v.begin(), v.end(), Elem(0));
      }
    }
    for (std::size_t n = 0; n < d.files.size(); ++n) d.library.push_back(encode_file(d.files[n], randomness.at(n), *scheme.sharing));
    d.caches = place_shares(d.library, sys, *scheme.sharing);
  }
  return d;
}

inline Deployment deploy(const SchemeParams& scheme, const Association& assoc, std::vector<FileData> files,
                         std::uint64_t seed, Sabotage sabotage = Sabotage::None) {
  const SystemParams& sys = scheme.system;
  std::vector<EncryptionRandomness> randomness;
  KeyStore keys;
  if (sys.t >= 1) {
    randomness = draw_randomness(static_cast<std::size_t>(sys.n_files), *scheme.sharing, seed);
    keys = place_keys(assoc, sys, scheme.symbols, scheme.m(), seed);
  } else {
    keys = place_keys_t0(sys.n_users, scheme.symbols, scheme.m(), seed);
  }
  Deployment d = place(scheme, assoc, std::move(files), std::move(randomness), std::move(keys), sabotage);
  d.seed = seed;
  return d;
}

// ---------------------------------------------------------------------------
// Transcript

struct Transmission {
  int round = 0;
  IdSet caches;  // Q; empty for t = 0
  IdSet users;   // chi_Q
  int multiplicity = 1;
  Symbols payload;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

struct Transcript {
  SchemeParams scheme;
  Association assoc;
  DemandVector demands;
  std::uint64_t seed = 0;
  bool keyed = true;
  std::vector<Transmission> transmissions;

  std::size_t total_bits() const {
    std::size_t bits = 0;
    for (const auto& x : transmissions) bits += x.payload.size() * static_cast<std::size_t>(scheme.m());
    return bits;
  }

  /// Transmitted bits over the (padded) file size.
  Rational rate() const {
    return Rational(static_cast<std::int64_t>(total_bits()), static_cast<std::int64_t>(scheme.padded_file_bits()));
  }
};

/// sum_j [C(L, t+1) - C(L - |R_j|, t+1)].
inline std::uint64_t expected_transmission_count(const Association& assoc, int t) {
  if (t == 0) return static_cast<std::uint64_t>(assoc.n_users());
  std::uint64_t n = 0;
  for (const auto& r : rounds(assoc)) {
    n += binomial(assoc.n_caches(), t + 1) - binomial(assoc.n_caches() - static_cast<int>(r.size()), t + 1);
  }
  return n;
}

namespace detail {

inline const Symbols& library_share(const std::vector<ShareVector>& library, const SubsetIndex& idx, int file,
                                    const IdSet& label) {
  return library.at(static_cast<std::size_t>(file - 1)).shares.at(static_cast<std::size_t>(idx.rank(label) - 1));
}

}  // namespace detail

inline Transcript deliver(const DemandVector& demands, const std::vector<ShareVector>& library, const KeyStore& keys,
                          const Association& assoc, const SchemeParams& scheme, bool omit_keys = false) {
  const SystemParams& sys = scheme.system;
  if (sys.t == 0) throw TopologyError("t = 0 delivery goes through deliver_t0");
  demands.validate(sys.n_files, sys.n_users);
  const SubsetIndex idx = scheme.sharing->share_index();

  Transcript tx{scheme, assoc, demands, 0, !omit_keys, {}};
  for (int j = 1; j <= static_cast<int>(rounds(assoc).size()); ++j) {
    for (const ServingSet& s : serving_sets(assoc, sys.t, j)) {
      Symbols payload(scheme.symbols);
      for (int lambda : s.caches) {
        const int u = assoc.user_at(lambda, j);
        if (u == 0) continue;
        add_into(payload, detail::library_share(library, idx, demands.of(u), without(s.caches, lambda)));
      }
      if (!omit_keys) {
        const KeyEntry* key = keys.find(j, s.users, s.multiplicity);
        if (!key) throw std::logic_error("no key for serving set");
        add_into(payload, key->payload);
      }
      tx.transmissions.push_back({j, s.caches, s.users, s.multiplicity, std::move(payload)});
    }
  }
  if (tx.transmissions.size() != expected_transmission_count(assoc, sys.t)) {
    throw std::logic_error("transmission count differs from the closed form");
  }
  return tx;
}

/// t = 0: user k gets W^{d_k} XOR T_k.
inline Transcript deliver_t0(const DemandVector& demands, const std::vector<FileData>& files, const KeyStore& keys,
                             const Association& assoc, const SchemeParams& scheme, bool omit_keys = false) {
  const SystemParams& sys = scheme.system;
  if (sys.t != 0) throw TopologyError("deliver_t0 requires t = 0");
  demands.validate(sys.n_files, sys.n_users);
  Transcript tx{scheme, assoc, demands, 0, !omit_keys, {}};
  for (int k = 1; k <= sys.n_users; ++k) {
    Symbols payload = files.at(static_cast<std::size_t>(demands.of(k) - 1)).subfiles.at(0);
    if (!omit_keys) {
      const KeyEntry* key = keys.find(1, IdSet{k}, 1);
      if (!key) throw std::logic_error("no key for user " + std::to_string(k));
      add_into(payload, key->payload);
    }
    tx.transmissions.push_back({1, {}, {k}, 1, std::move(payload)});
  }
  return tx;
}

inline Transcript deliver(const DemandVector& demands, const Deployment& d) {
  const bool omit = d.sabotage == Sabotage::NoKeys;
  Transcript tx = d.scheme.system.t == 0 ? deliver_t0(demands, d.files, d.keys, d.assoc, d.scheme, omit)
                                         : deliver(demands, d.library, d.keys, d.assoc, d.scheme, omit);
  tx.seed = d.seed;
  return tx;
}

// ---------------------------------------------------------------------------
// Users

/// What user k can read: its helper cache, its private keys, the broadcast.
struct UserView {
  int user = 0;
  int cache = 0;
  HelperCacheContent shares;
  std::vector<KeyEntry> keys;
  Transcript transcript;

  const KeyEntry* key_for(const Transmission& x) const {
    for (const auto& k : keys) {
      if (k.slot.round == x.round && k.slot.users == x.users && k.slot.multiplicity == x.multiplicity) return &k;
    }
    return nullptr;
  }
};

inline UserView make_user_view(const Deployment& d, const Transcript& tx, int user) {
  UserView v;
  v.user = user;
  v.cache = d.assoc.cache_of(user);
  if (!d.caches.empty()) v.shares = d.caches.at(static_cast<std::size_t>(v.cache - 1));
  v.keys = d.keys.held_by(user);
  v.transcript = tx;
  return v;
}

/// Recovers W^{d_k} from the view; original_bit_length is the system file size.
inline FileData decode(const UserView& view, const SchemeParams& scheme) {
  const Transcript& tx = view.transcript;
  const SystemParams& sys = scheme.system;
  const int k = view.user;
  const int want = tx.demands.of(k);

  if (sys.t == 0) {
    for (const auto& x : tx.transmissions) {
      if (x.users != IdSet{k}) continue;
      Symbols data = x.payload;
      if (tx.keyed) {
        const KeyEntry* key = view.key_for(x);
        if (!key) throw DecodeError("user " + std::to_string(k) + " lacks the key for its transmission");
        add_into(data, key->payload);
      }
      return FileData{want, {std::move(data)}, sys.file_bits};
    }
    throw DecodeError("no transmission for user " + std::to_string(k));
  }

  const SharingParams& sharing = *scheme.sharing;
  const SubsetIndex idx = sharing.share_index();
  const int own = view.cache;
  std::vector<std::optional<Symbols>> slots(sharing.n_shares);
  for (const auto& cs : view.shares.shares) {
    if (cs.file_index == want) slots[cs.share_rank - 1] = cs.data;
  }

  for (const auto& x : tx.transmissions) {
    if (!contains(x.users, k)) continue;
    Symbols data = x.payload;
    if (tx.keyed) {
      const KeyEntry* key = view.key_for(x);
      if (!key) throw DecodeError("user " + std::to_string(k) + " lacks key for round " + std::to_string(x.round));
      add_into(data, key->payload);
    }
    // Every other contributor's share is labelled by a set containing `own`.
    for (int lambda : x.caches) {
      if (lambda == own) continue;
      const int u = tx.assoc.user_at(lambda, x.round);
      if (u == 0 || !contains(x.users, u)) continue;
      const CachedShare* cs = view.shares.find(tx.demands.of(u), without(x.caches, lambda));
      if (!cs) throw DecodeError("cached share missing for interference cancellation");
      add_into(data, cs->data);
    }
    const std::uint64_t r = idx.rank(without(x.caches, own));
    auto& slot = slots[r - 1];
    if (slot) throw DecodeError("share slot " + std::to_string(r) + " filled twice");
    slot = std::move(data);
  }

  ShareVector sv{want, {}};
  for (std::size_t r = 0; r < slots.size(); ++r) {
    if (!slots[r]) throw DecodeError("insufficient transmissions: share " + std::to_string(r + 1) + " missing");
    sv.shares.push_back(std::move(*slots[r]));
  }
  FileData out = reconstruct_file(sv, sharing);
  out.original_bit_length = sys.file_bits;
  return out;
}

}  // namespace scc
