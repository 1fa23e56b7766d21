/**************************************************************************
 * eavesdrop.hpp
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

// Linear eavesdropping analysis of a single user.
//
// All placement and delivery maps are GF(2^m)-linear in the unknowns
// (sub-files and encryption keys of every file, and every transmission key)
// and act on each symbol position separately. A user's observations are
// therefore rows of one coefficient matrix O. A linear function of the
// unknowns is learnable iff it lies in the row space of O, so the sub-files
// of file n stay hidden exactly when
//
//     rank([O; F_n]) - rank(O) = P,
//
// where F_n selects the P sub-files of file n. The difference is reported as
// the rank deficit; 0 means the file is decodable.

#include <cstddef>
#include <map>
#include <stdexcept>
#include <tuple>

#include "combinatorics.hpp"
#include "gf2m.hpp"
#include "protocol.hpp"

namespace scc {

struct EavesdropReport {
  int user = 0;
  int target_file = 0;
  std::size_t observations = 0;
  std::size_t unknowns = 0;
  std::size_t target_dimension = 0;  // P
  std::size_t rank_deficit = 0;      // unknown dimensions of the target

  /// Dimensions of the target file pinned down by the observations.
  std::size_t leaked_dimension() const { return target_dimension - rank_deficit; }
};

/// `zero_encryption` models placement with V = 0, i.e. the encryption-key
/// columns are known to be zero and are dropped from the system.
inline EavesdropReport attempt_eavesdrop(const UserView& view, int target_file, const SchemeParams& scheme,
                                         bool zero_encryption = false) {
  const SystemParams& sys = scheme.system;
  const Transcript& tx = view.transcript;
  if (target_file < 1 || target_file > sys.n_files) throw std::out_of_range("target file out of range");

  const std::size_t P = scheme.n_subfiles;
  const std::size_t Q = (sys.t >= 1 && !zero_encryption) ? scheme.sharing->n_enc_keys : 0;
  const std::size_t per_file = P + Q;

  // Column layout: [file 1: W_1..W_P V_1..V_Q] ... [file N] [keys in transcript order].
  std::map<std::tuple<int, IdSet, int>, std::size_t> key_col;
  std::size_t cols = per_file * static_cast<std::size_t>(sys.n_files);
  if (tx.keyed) {
    for (const auto& x : tx.transmissions) key_col.emplace(std::tuple{x.round, x.users, x.multiplicity}, cols++);
  }
  auto w_col = [&](int file, std::size_t p) { return per_file * static_cast<std::size_t>(file - 1) + p; };

  const Field f(scheme.field);
  Matrix obs(0, cols);
  auto share_row = [&](Symbols& row, int file, const IdSet& label) {
    const SharingParams& sh = *scheme.sharing;
    const auto g = sh.generator.row(sh.share_index().rank(label) - 1);
    for (std::size_t c = 0; c < P + Q; ++c) row[w_col(file, c)] += g[c];
  };

  for (const auto& cs : view.shares.shares) {
    Symbols row(cols);
    share_row(row, cs.file_index, cs.label);
    obs.append_row(row);
  }
  for (const auto& k : view.keys) {
    auto it = key_col.find({k.slot.round, k.slot.users, k.slot.multiplicity});
    if (it == key_col.end()) continue;  // key unused by this transcript
    Symbols row(cols);
    row[it->second] = Elem(1);
    obs.append_row(row);
  }
  for (const auto& x : tx.transmissions) {
    Symbols row(cols);
    if (sys.t == 0) {
      row[w_col(tx.demands.of(x.users.front()), 0)] = Elem(1);
    } else {
      for (int lambda : x.caches) {
        const int u = tx.assoc.user_at(lambda, x.round);
        if (u == 0 || !contains(x.users, u)) continue;
        share_row(row, tx.demands.of(u), without(x.caches, lambda));
      }
    }
    if (tx.keyed) row[key_col.at({x.round, x.users, x.multiplicity})] = Elem(1);
    obs.append_row(row);
  }

  Matrix stacked = obs;
  for (std::size_t p = 0; p < P; ++p) {
    Symbols row(cols);
    row[w_col(target_file, p)] = Elem(1);
    stacked.append_row(row);
  }
  EavesdropReport rep;
  rep.user = view.user;
  rep.target_file = target_file;
  rep.observations = obs.rows();
  rep.unknowns = cols;
  rep.target_dimension = P;
  rep.rank_deficit = rank(f, stacked) - rank(f, obs);
  return rep;
}

}  // namespace scc
