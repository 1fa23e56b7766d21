/**************************************************************************
 * rng.hpp
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

// Seeded random streams.
//
// Every consumer of randomness (file contents, per-file encryption keys,
// per-slot transmission keys) draws from its own std::mt19937_64 stream. The
// stream seed is SplitMix64 applied to (seed, domain, index), so streams are
// independent of the order in which they are created. Symbols are taken from
// the low m bits of each 64-bit output, which is exactly uniform over GF(2^m)
// and, unlike std::uniform_int_distribution, identical across standard
// libraries.

#include <cstdint>
#include <random>

#include "gf2m.hpp"

namespace scc {

enum class StreamDomain : std::uint64_t {
  FileContent = 1,
  EncryptionKey = 2,
  TransmissionKey = 3,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SymbolStream {
public:
  SymbolStream(std::uint64_t seed, StreamDomain domain, std::uint64_t index)
      : engine_(splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(domain)) ^ index)) {}

  Elem next(int m) { return Elem(static_cast<std::uint32_t>(engine_() & ((std::uint64_t{1} << m) - 1))); }

  Symbols take(std::size_t count, int m) {
    Symbols out(count);
    for (auto& e : out) e = next(m);
    return out;
  }

  std::uint8_t next_byte() { return static_cast<std::uint8_t>(engine_() & 0xff); }

private:
  std::mt19937_64 engine_;
};

/// Non-reproducible symbols from the platform entropy source.
inline Symbols os_random_symbols(std::size_t count, int m) {
  std::random_device rd;
  Symbols out(count);
  for (auto& e : out) e = Elem(static_cast<std::uint32_t>(rd() & ((1u << m) - 1)));
  return out;
}

}  // namespace scc
