/**************************************************************************
 * secret_share.hpp
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

// Ramp secret sharing of a file into C(L, t) shares, one per t-subset of the
// L helper caches.
//
// A file is cut into P = C(L-1, t) sub-files and mixed with Q = C(L-1, t-1)
// uniformly random encryption keys of the same length. For every symbol
// position the shares are
//
//     [S_1 .. S_{P+Q}]^T = G * [W_1 .. W_P, V_1 .. V_Q]^T
//
// with G the (P+Q) x (P+Q) Cauchy matrix. Any Q shares are uniform and
// independent of the file; all P+Q shares determine it.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "gf2m.hpp"
#include "rng.hpp"

namespace scc {

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SharingParams {
  int lambda_caches = 0;
  int t = 0;
  std::size_t n_shares = 0;
  std::size_t n_subfiles = 0;
  std::size_t n_enc_keys = 0;
  FieldParams field;
  std::size_t symbols_per_subfile = 0;
  Matrix generator;

  /// Picks the smallest m with 2^m >= 2 C(L, t) unless `m` is given.
  static SharingParams make(int lambda_caches, int t, std::size_t symbols_per_subfile,
                            std::optional<int> m = std::nullopt) {
    if (t < 1 || t > lambda_caches - 1) throw std::invalid_argument("secret sharing needs 1 <= t <= L-1");
    if (symbols_per_subfile == 0) throw std::invalid_argument("sub-files must hold at least one symbol");
    SharingParams p;
    p.lambda_caches = lambda_caches;
    p.t = t;
    p.n_shares = binomial(lambda_caches, t);
    p.n_subfiles = binomial(lambda_caches - 1, t);
    p.n_enc_keys = binomial(lambda_caches - 1, t - 1);
    if (p.n_subfiles + p.n_enc_keys != p.n_shares) throw std::logic_error("Pascal identity violated");
    p.field = m ? FieldParams::with_default_modulus(*m) : FieldParams::smallest_with_size(2 * p.n_shares);
    if ((std::uint64_t{1} << p.field.m) < 2 * p.n_shares) {
      throw FieldTooSmallError("GF(2^" + std::to_string(p.field.m) + ") too small for " +
                               std::to_string(p.n_shares) + " shares");
    }
    p.symbols_per_subfile = symbols_per_subfile;
    p.generator = cauchy_matrix(Field(p.field), p.n_shares);
    return p;
  }

  Field make_field() const { return Field(field); }
  std::size_t subfile_bits() const { return symbols_per_subfile * static_cast<std::size_t>(field.m); }
  /// Padded file size B.
  std::size_t file_bits() const { return n_subfiles * subfile_bits(); }
  SubsetIndex share_index() const { return SubsetIndex(lambda_caches, t); }
};

struct FileData {
  int file_index = 0;
  std::vector<Symbols> subfiles;
  std::size_t original_bit_length = 0;

  friend bool operator==(const FileData&, const FileData&) = default;
};

struct EncryptionRandomness {
  int file_index = 0;
  std::vector<Symbols> enc_keys;
};

/// shares[r - 1] is the share labelled by the t-subset of rank r.
struct ShareVector {
  int file_index = 0;
  std::vector<Symbols> shares;

  friend bool operator==(const ShareVector&, const ShareVector&) = default;
};

/// Smallest s such that `parts` sub-files of s m-bit symbols hold `bits`.
inline std::size_t symbols_needed(std::size_t bits, std::size_t parts, int m) {
  const std::size_t per_symbol_row = parts * static_cast<std::size_t>(m);
  const std::size_t s = (bits + per_symbol_row - 1) / per_symbol_row;
  return s == 0 ? 1 : s;
}

/// Splits a bit string (bytes MSB first, first `bit_length` bits used) into
/// `parts` sub-files of `s` symbols, zero padded. Sub-file 1 takes the first
/// s*m bits, and so on; each symbol is read MSB first.
inline std::vector<Symbols> split_bits(std::span<const std::uint8_t> bytes, std::size_t bit_length,
                                       std::size_t parts, std::size_t s, int m) {
  if (bit_length > bytes.size() * 8) throw DimensionError("bit length exceeds payload");
  if (bit_length > parts * s * static_cast<std::size_t>(m)) throw DimensionError("payload does not fit");
  auto bit = [&](std::size_t i) -> std::uint32_t {
    if (i >= bit_length) return 0;
    return (bytes[i / 8] >> (7 - i % 8)) & 1u;
  };
  std::vector<Symbols> out(parts, Symbols(s));
  std::size_t pos = 0;
  for (auto& sub : out) {
    for (auto& sym : sub) {
      std::uint32_t v = 0;
      for (int b = 0; b < m; ++b) v = (v << 1) | bit(pos++);
      sym = Elem(v);
    }
  }
  return out;
}

/// Inverse of split_bits: returns ceil(bit_length / 8) bytes.
inline std::vector<std::uint8_t> join_bits(const std::vector<Symbols>& parts, std::size_t bit_length, int m) {
  std::vector<std::uint8_t> out((bit_length + 7) / 8, 0);
  std::size_t pos = 0;
  for (const auto& sub : parts) {
    for (Elem sym : sub) {
      for (int b = m - 1; b >= 0; --b, ++pos) {
        if (pos < bit_length && ((sym.value() >> b) & 1u)) out[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
      }
    }
  }
  return out;
}

inline FileData make_file(int file_index, std::span<const std::uint8_t> bytes, std::size_t bit_length,
                          const SharingParams& params) {
  return FileData{file_index,
                  split_bits(bytes, bit_length, params.n_subfiles, params.symbols_per_subfile, params.field.m),
                  bit_length};
}

inline std::vector<std::uint8_t> file_bytes(const FileData& file, const SharingParams& params) {
  return join_bits(file.subfiles, file.original_bit_length, params.field.m);
}

namespace detail {

inline void check_rows(const std::vector<Symbols>& rows, std::size_t count, std::size_t s, const char* what) {
  if (rows.size() != count) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(count) + " rows, got " +
                         std::to_string(rows.size()));
  }
  for (const auto& r : rows) {
    if (r.size() != s) throw DimensionError(std::string(what) + ": row length mismatch");
  }
}

}  // namespace detail

inline ShareVector encode_file(const FileData& file, const EncryptionRandomness& randomness,
                               const SharingParams& params) {
  const std::size_t s = params.symbols_per_subfile;
  detail::check_rows(file.subfiles, params.n_subfiles, s, "file");
  detail::check_rows(randomness.enc_keys, params.n_enc_keys, s, "encryption keys");
  const Field f = params.make_field();
  ShareVector out{file.file_index, std::vector<Symbols>(params.n_shares, Symbols(s))};
  Symbols stacked(params.n_shares);
  for (std::size_t pos = 0; pos < s; ++pos) {
    for (std::size_t p = 0; p < params.n_subfiles; ++p) stacked[p] = file.subfiles[p][pos];
    for (std::size_t q = 0; q < params.n_enc_keys; ++q) stacked[params.n_subfiles + q] = randomness.enc_keys[q][pos];
    const Symbols col = multiply(f, params.generator, stacked);
    for (std::size_t r = 0; r < params.n_shares; ++r) out.shares[r][pos] = col[r];
  }
  return out;
}

/// Recovers the sub-files from a complete share vector. The returned file
/// has original_bit_length equal to the padded size; callers that know the
/// true length overwrite it.
inline FileData reconstruct_file(const ShareVector& shares, const SharingParams& params) {
  const std::size_t s = params.symbols_per_subfile;
  detail::check_rows(shares.shares, params.n_shares, s, "shares");
  const Field f = params.make_field();
  FileData out{shares.file_index, std::vector<Symbols>(params.n_subfiles, Symbols(s)), params.file_bits()};
  Symbols rhs(params.n_shares);
  for (std::size_t pos = 0; pos < s; ++pos) {
    for (std::size_t r = 0; r < params.n_shares; ++r) rhs[r] = shares.shares[r][pos];
    const Symbols x = solve(f, params.generator, rhs);
    for (std::size_t p = 0; p < params.n_subfiles; ++p) out.subfiles[p][pos] = x[p];
  }
  return out;
}

/// True iff every set of at most n_enc_keys rows of `generator`, restricted
/// to the encryption-key columns, is linearly independent.
inline bool leakage_rank_check(const Field& f, const Matrix& generator, std::size_t n_subfiles,
                               std::size_t n_enc_keys) {
  const std::size_t n = generator.rows();
  if (n_subfiles + n_enc_keys != generator.cols()) throw DimensionError("generator column count mismatch");
  // Depth-first over row subsets in lexicographic order, keeping the partial
  // echelon basis of the rows chosen so far. Each stored row is zero at the
  // pivots of the rows above it.
  struct BasisRow {
    Symbols v;
    std::size_t pivot;
  };
  std::vector<BasisRow> basis;
  basis.reserve(n_enc_keys);

  auto reduce = [&](std::size_t row) -> std::optional<BasisRow> {
    Symbols v(generator.row(row).begin() + static_cast<std::ptrdiff_t>(n_subfiles), generator.row(row).end());
    for (const auto& b : basis) {
      const Elem c = v[b.pivot];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += f.mul(c, b.v[j]);
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero()) {
        const Elem s = f.inv(v[j]);
        for (auto& e : v) e = f.mul(e, s);
        return BasisRow{std::move(v), j};
      }
    }
    return std::nullopt;
  };

  auto dfs = [&](auto&& self, std::size_t start) -> bool {
    if (basis.size() == n_enc_keys) return true;
    for (std::size_t r = start; r < n; ++r) {
      auto b = reduce(r);
      if (!b) return false;
      basis.push_back(std::move(*b));
      const bool ok = self(self, r + 1);
      basis.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return dfs(dfs, 0);
}

inline bool leakage_rank_check(const SharingParams& params) {
  return leakage_rank_check(params.make_field(), params.generator, params.n_subfiles, params.n_enc_keys);
}

/// One record per file 1..n_files; file n uses its own stream.
inline std::vector<EncryptionRandomness> draw_randomness(std::size_t n_files, const SharingParams& params,
                                                         std::uint64_t seed) {
  std::vector<EncryptionRandomness> out;
  out.reserve(n_files);
  for (std::size_t n = 1; n <= n_files; ++n) {
    SymbolStream stream(seed, StreamDomain::EncryptionKey, n);
    EncryptionRandomness r{static_cast<int>(n), {}};
    r.enc_keys.reserve(params.n_enc_keys);
    for (std::size_t q = 0; q < params.n_enc_keys; ++q) {
      r.enc_keys.push_back(stream.take(params.symbols_per_subfile, params.field.m));
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Same shape as draw_randomness, from the OS entropy source.
inline std::vector<EncryptionRandomness> draw_randomness_os(std::size_t n_files, const SharingParams& params) {
  std::vector<EncryptionRandomness> out;
  for (std::size_t n = 1; n <= n_files; ++n) {
    EncryptionRandomness r{static_cast<int>(n), {}};
    for (std::size_t q = 0; q < params.n_enc_keys; ++q) {
      r.enc_keys.push_back(os_random_symbols(params.symbols_per_subfile, params.field.m));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace scc
