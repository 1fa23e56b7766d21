/**************************************************************************
 * transcript_io.hpp
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

// Text form of a transcript.
//
//   scc-transcript 1
//   files <N>
//   users <K>
//   caches <L>
//   t <t>
//   file_bits <B>
//   field <m> 0x<modulus>
//   subfiles <P>
//   symbols <s>
//   profile <L_1,...,L_L>
//   association <u,u;u;...>
//   demands <d_1,...,d_K>
//   seed <seed>
//   keys present|omitted
//   transmissions <count>
//   <round> <Q> <chi> <l> <payload hex>     (one line per transmission)
//
// Q and chi are comma-separated sorted ids, "-" when empty. The payload is
// the concatenation of its symbols, first symbol first, each symbol as m
// bits most significant bit first, zero padded to a whole byte and written
// as lowercase hex.

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "gf2m.hpp"
#include "protocol.hpp"
#include "topology.hpp"

namespace scc {

class TranscriptFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string symbols_to_hex(const Symbols& s, int m) {
  std::vector<std::uint8_t> bytes((s.size() * static_cast<std::size_t>(m) + 7) / 8, 0);
  std::size_t pos = 0;
  for (Elem e : s) {
    for (int b = m - 1; b >= 0; --b, ++pos) {
      if ((e.value() >> b) & 1u) bytes[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

inline Symbols hex_to_symbols(const std::string& hex, std::size_t count, int m) {
  const std::size_t n_bytes = (count * static_cast<std::size_t>(m) + 7) / 8;
  if (hex.size() != 2 * n_bytes) throw TranscriptFormatError("payload has wrong length");
  auto nibble = [](char c) -> std::uint32_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint32_t>(c - 'a' + 10);
    throw TranscriptFormatError("bad hex digit");
  };
  std::vector<std::uint8_t> bytes(n_bytes);
  for (std::size_t i = 0; i < n_bytes; ++i) bytes[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  Symbols out(count);
  std::size_t pos = 0;
  for (auto& e : out) {
    std::uint32_t v = 0;
    for (int b = 0; b < m; ++b, ++pos) v = (v << 1) | ((bytes[pos / 8] >> (7 - pos % 8)) & 1u);
    e = Elem(v);
  }
  return out;
}

namespace detail {

inline std::string ids_or_dash(const IdSet& s) { return s.empty() ? "-" : format_ids(s); }

inline IdSet parse_ids_or_dash(const std::string& s) {
  if (s == "-") return {};
  IdSet out = parse_id_list(s);
  return out;
}

}  // namespace detail

inline std::string serialize_transcript(const Transcript& tx) {
  const SchemeParams& sc = tx.scheme;
  const SystemParams& sys = sc.system;
  char modulus[16];
  std::snprintf(modulus, sizeof modulus, "0x%x", sc.field.modulus);
  std::ostringstream os;
  os << "scc-transcript 1\n"
     << "files " << sys.n_files << '\n'
     << "users " << sys.n_users << '\n'
     << "caches " << sys.n_caches << '\n'
     << "t " << sys.t << '\n'
     << "file_bits " << sys.file_bits << '\n'
     << "field " << sc.field.m << ' ' << modulus << '\n'
     << "subfiles " << sc.n_subfiles << '\n'
     << "symbols " << sc.symbols << '\n'
     << "profile " << format_ids(tx.assoc.profile()) << '\n'
     << "association " << tx.assoc.to_string() << '\n'
     << "demands " << format_ids(tx.demands.d) << '\n'
     << "seed " << tx.seed << '\n'
     << "keys " << (tx.keyed ? "present" : "omitted") << '\n'
     << "transmissions " << tx.transmissions.size() << '\n';
  for (const auto& x : tx.transmissions) {
    os << x.round << ' ' << detail::ids_or_dash(x.caches) << ' ' << detail::ids_or_dash(x.users) << ' '
       << x.multiplicity << ' ' << symbols_to_hex(x.payload, sc.m()) << '\n';
  }
  return os.str();
}

inline Transcript parse_transcript(const std::string& text) {
  std::istringstream is(text);
  auto expect = [&](const char* key) {
    std::string k;
    if (!(is >> k) || k != key) throw TranscriptFormatError(std::string("expected '") + key + "'");
  };
  auto read_line_value = [&](const char* key) {
    expect(key);
    std::string v;
    is >> std::ws;
    std::getline(is, v);
    return v;
  };

  expect("scc-transcript");
  int version = 0;
  is >> version;
  if (version != 1) throw TranscriptFormatError("unsupported transcript version");
  int N = 0, K = 0, L = 0, t = 0, m = 0;
  std::size_t B = 0, P = 0, s = 0;
  std::string modulus;
  expect("files");
  is >> N;
  expect("users");
  is >> K;
  expect("caches");
  is >> L;
  expect("t");
  is >> t;
  expect("file_bits");
  is >> B;
  expect("field");
  is >> m >> modulus;
  expect("subfiles");
  is >> P;
  expect("symbols");
  is >> s;
  if (!is) throw TranscriptFormatError("malformed header");
  read_line_value("profile");
  const Association assoc = parse_association_inline(read_line_value("association"));
  DemandVector demands{detail::parse_id_list(read_line_value("demands"))};
  expect("seed");
  std::uint64_t seed = 0;
  is >> seed;
  const std::string keys = read_line_value("keys");
  expect("transmissions");
  std::size_t count = 0;
  is >> count;

  Transcript tx;
  tx.scheme = SchemeParams::make(SystemParams::make(N, K, L, t, B), m);
  if (tx.scheme.field.modulus != std::stoul(modulus, nullptr, 16) || tx.scheme.n_subfiles != P || tx.scheme.symbols != s) {
    throw TranscriptFormatError("header layout disagrees with the parameters");
  }
  tx.assoc = assoc;
  tx.demands = std::move(demands);
  tx.seed = seed;
  if (keys != "present" && keys != "omitted") throw TranscriptFormatError("keys must be present or omitted");
  tx.keyed = keys == "present";
  for (std::size_t i = 0; i < count; ++i) {
    Transmission x;
    std::string q, chi, hex;
    if (!(is >> x.round >> q >> chi >> x.multiplicity >> hex)) throw TranscriptFormatError("truncated records");
    x.caches = detail::parse_ids_or_dash(q);
    x.users = detail::parse_ids_or_dash(chi);
    x.payload = hex_to_symbols(hex, s, m);
    tx.transmissions.push_back(std::move(x));
  }
  return tx;
}

}  // namespace scc
