/**************************************************************************
 * scenario.hpp
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

// End-to-end scenarios: configuration files, the run / rate / verify
// commands, and their text outputs.
//
// Configuration is flat "key = value" text, '#' starts a comment:
//
//   files = 8                 # N
//   users = 8                 # K (default: from the association)
//   caches = 4                # L (default: from the association)
//   t = 2                     # or: memory = 8  (helper cache size M, may be p/q)
//   file_bits = 96            # B, pseudo-random files from the seed
//   payload_files = a.bin,b.bin   # alternative to file_bits, one per file
//   field_m = 4               # optional, default is the smallest valid field
//   seed = 7
//   association = 1,2,3;4,5;6,7;8     # or: association_file = assoc.txt
//   demands = 1,2,3,4,5,6,7,8         # optional, default 1..K
//   transcript = out.txt      # optional transcript output path

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "eavesdrop.hpp"
#include "protocol.hpp"
#include "secrecy.hpp"
#include "secret_share.hpp"
#include "topology.hpp"
#include "transcript_io.hpp"

namespace scc {

/// Malformed or incomplete configuration; maps to the usage exit code.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct ScenarioConfig {
  int n_files = 0;
  std::optional<int> n_users;
  std::optional<int> n_caches;
  std::optional<int> t;
  std::optional<Rational> memory;
  std::optional<std::size_t> file_bits;
  std::vector<std::string> payload_files;
  std::optional<int> field_m;
  std::uint64_t seed = 1;
  std::string association;  // inline form
  std::optional<DemandVector> demands;
  std::string transcript_path;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
T parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size() || x < 0) throw std::invalid_argument(v);
    return static_cast<T>(x);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' needs a non-negative integer, got '" + v + "'");
  }
}

inline Rational parse_rational(const std::string& key, const std::string& v) {
  const auto slash = v.find('/');
  if (slash == std::string::npos) return Rational(parse_number<std::int64_t>(key, v));
  const auto den = parse_number<std::int64_t>(key, trim(v.substr(slash + 1)));
  if (den == 0) throw ConfigError("'" + key + "' has zero denominator");
  return Rational(parse_number<std::int64_t>(key, trim(v.substr(0, slash))), den);
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

inline DemandVector parse_demands(const std::string& csv) {
  DemandVector d;
  for (const auto& item : detail::split_list(csv)) d.d.push_back(detail::parse_number<int>("demands", item));
  return d;
}

/// Relative paths in the config resolve against `base_dir`.
inline ScenarioConfig parse_config(const std::string& text, const std::string& base_dir = "") {
  auto resolve = [&](const std::string& p) {
    return (p.empty() || p.front() == '/' || base_dir.empty()) ? p : base_dir + "/" + p;
  };
  ScenarioConfig c;
  bool have_files = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "files") {
      c.n_files = detail::parse_number<int>(key, value);
      have_files = true;
    } else if (key == "users") {
      c.n_users = detail::parse_number<int>(key, value);
    } else if (key == "caches") {
      c.n_caches = detail::parse_number<int>(key, value);
    } else if (key == "t") {
      c.t = detail::parse_number<int>(key, value);
    } else if (key == "memory" || key == "M") {
      c.memory = detail::parse_rational(key, value);
    } else if (key == "file_bits") {
      c.file_bits = detail::parse_number<std::size_t>(key, value);
    } else if (key == "payload_files") {
      for (const auto& p : detail::split_list(value)) c.payload_files.push_back(resolve(p));
    } else if (key == "field_m") {
      c.field_m = detail::parse_number<int>(key, value);
    } else if (key == "seed") {
      c.seed = detail::parse_number<std::uint64_t>(key, value);
    } else if (key == "association") {
      c.association = value;
    } else if (key == "association_file") {
      // One line per cache; stored in inline form.
      std::string text_lines = detail::read_text_file(resolve(value));
      if (!text_lines.empty() && text_lines.back() == '\n') text_lines.pop_back();
      std::replace(text_lines.begin(), text_lines.end(), '\n', ';');
      text_lines.erase(std::remove(text_lines.begin(), text_lines.end(), '\r'), text_lines.end());
      c.association = text_lines;
    } else if (key == "demands") {
      c.demands = parse_demands(value);
    } else if (key == "transcript") {
      c.transcript_path = resolve(value);
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_files) throw ConfigError("'files' is required");
  if (c.association.empty()) throw ConfigError("'association' or 'association_file' is required");
  if (c.t && c.memory) throw ConfigError("give either 't' or 'memory', not both");
  if (!c.t && !c.memory) throw ConfigError("one of 't' or 'memory' is required");
  if (c.file_bits && !c.payload_files.empty()) throw ConfigError("give either 'file_bits' or 'payload_files'");
  if (!c.file_bits && c.payload_files.empty()) throw ConfigError("one of 'file_bits' or 'payload_files' is required");
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return parse_config(detail::read_text_file(path), slash == std::string::npos ? "" : path.substr(0, slash));
}

/// A config resolved into a deployed system (placement done, no delivery yet).
struct Scenario {
  SchemeParams scheme;
  Association assoc;
  DemandVector demands;
  std::uint64_t seed = 0;
  std::vector<FileData> files;
};

inline Scenario build_scenario(const ScenarioConfig& c) {
  const Association assoc = parse_association_inline(c.association);
  const int K = c.n_users.value_or(assoc.n_users());
  const int L = c.n_caches.value_or(assoc.n_caches());
  if (K != assoc.n_users()) throw TopologyError("'users' disagrees with the association");
  if (L != assoc.n_caches()) throw TopologyError("'caches' disagrees with the association");

  std::vector<std::vector<std::uint8_t>> payloads;
  std::size_t bits = c.file_bits.value_or(0);
  if (!c.payload_files.empty()) {
    if (static_cast<int>(c.payload_files.size()) != c.n_files) throw ConfigError("need one payload file per library file");
    for (const auto& p : c.payload_files) {
      const std::string raw = detail::read_text_file(p);
      payloads.emplace_back(raw.begin(), raw.end());
      bits = std::max(bits, raw.size() * 8);
    }
    if (bits == 0) throw ConfigError("payload files are all empty");
  }

  const SystemParams sys = c.t ? SystemParams::make(c.n_files, K, L, *c.t, bits)
                               : SystemParams::from_memory(c.n_files, K, L, *c.memory, bits);
  Scenario sc{SchemeParams::make(sys, c.field_m), assoc, c.demands.value_or(DemandVector::identity(K)), c.seed, {}};
  if (payloads.empty()) {
    sc.files = random_library(sc.scheme, c.seed);
  } else {
    for (std::size_t n = 0; n < payloads.size(); ++n) {
      sc.files.push_back(make_scheme_file(static_cast<int>(n) + 1, payloads[n], payloads[n].size() * 8, sc.scheme));
    }
  }
  return sc;
}

struct RunResult {
  int exit_code = kExitOk;
  std::string transcript;
  std::string summary;
  std::size_t transmissions = 0;
  Rational rate;
  std::size_t decoded = 0;
};

inline RunResult run_scenario(const Scenario& sc) {
  const SystemParams& sys = sc.scheme.system;
  const Deployment dep = deploy(sc.scheme, sc.assoc, sc.files, sc.seed);
  const Transcript tx = deliver(sc.demands, dep);

  RunResult r;
  r.transcript = serialize_transcript(tx);
  r.transmissions = tx.transmissions.size();
  r.rate = tx.rate();

  std::ostringstream os;
  os << "instance N=" << sys.n_files << " K=" << sys.n_users << " L=" << sys.n_caches << " t=" << sys.t
     << " M=" << to_fraction(sys.helper_cache_size) << " B=" << sys.file_bits
     << " padded_B=" << sc.scheme.padded_file_bits() << " m=" << sc.scheme.m() << '\n';
  os << "profile " << format_ids(sc.assoc.profile()) << '\n';
  os << "association " << sc.assoc.to_string() << '\n';
  os << "cache_labels";
  for (int lambda = 1; lambda <= sc.assoc.n_caches(); ++lambda) os << ' ' << lambda << "<-" << sc.assoc.original_label(lambda);
  os << '\n';
  os << "demands " << format_ids(sc.demands.d) << '\n';
  os << "seed " << sc.seed << '\n';
  os << "keys " << dep.keys.size() << '\n';
  os << "transmissions " << r.transmissions << '\n';
  os << "rate " << to_fraction(r.rate) << ' ' << to_decimal(r.rate) << '\n';
  os << "formula_rate " << to_fraction(rate_secret(sc.assoc.profile(), sys.t)) << '\n';
  for (int k = 1; k <= sys.n_users; ++k) {
    bool ok = false;
    std::string why;
    try {
      const FileData got = decode(make_user_view(dep, tx, k), sc.scheme);
      ok = got.subfiles == sc.files.at(static_cast<std::size_t>(sc.demands.of(k) - 1)).subfiles;
      if (!ok) why = " (mismatch)";
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    if (ok) ++r.decoded;
    os << "user " << k << " file " << sc.demands.of(k) << " decode " << (ok ? "pass" : "fail") << why << '\n';
  }
  os << "decoded " << r.decoded << '/' << sys.n_users << '\n';
  r.summary = os.str();
  r.exit_code = r.decoded == static_cast<std::size_t>(sys.n_users) ? kExitOk : kExitFailure;
  return r;
}

// ---------------------------------------------------------------------------
// Rate table

inline const char* kRateCsvHeader =
    "t,M,M_exact,M_plus_1,rate_secret,rate_secret_exact,rate_nonsecret,rate_nonsecret_exact";

struct RateRow {
  int t = 0;
  Rational memory;
  Rational secret;
  Rational nonsecret;
};

inline std::vector<RateRow> rate_rows(const Profile& profile, int n_files, const std::vector<int>& ts) {
  validate_profile(profile, 0);
  std::vector<RateRow> rows;
  const int lambda = static_cast<int>(profile.size());
  for (int t : ts) {
    rows.push_back({t, SystemParams::memory_for(n_files, lambda, t), rate_secret(profile, t), rate_nonsecret_reference(profile, t)});
  }
  return rows;
}

inline std::string rate_csv(const std::vector<RateRow>& rows) {
  std::string out = std::string(kRateCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.t) + "," + to_decimal(r.memory) + "," + to_fraction(r.memory) + "," +
           to_decimal(r.memory + Rational(1)) + "," + to_decimal(r.secret) + "," + to_fraction(r.secret) + "," +
           to_decimal(r.nonsecret) + "," + to_fraction(r.nonsecret) + "\n";
  }
  return out;
}

/// Pads the profile with empty caches up to `n_caches`.
inline Profile parse_profile(const std::string& csv, std::optional<int> n_caches) {
  Profile p;
  for (const auto& item : detail::split_list(csv)) p.push_back(detail::parse_number<int>("profile", item));
  if (n_caches) {
    if (*n_caches < static_cast<int>(p.size())) throw ProfileError("profile has more entries than caches");
    p.resize(static_cast<std::size_t>(*n_caches), 0);
  }
  validate_profile(p, 0);
  return p;
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyResult {
  int exit_code = kExitOk;
  std::string report;
};

/// Runs the rank, eavesdrop and (when small enough) exhaustive MI checks.
/// With `demands` unset the MI check covers every distinct demand vector and
/// the eavesdrop check uses the scenario's demands.
inline VerifyResult verify_scenario(const Scenario& sc, Sabotage sabotage, bool all_demands) {
  const SystemParams& sys = sc.scheme.system;
  std::ostringstream os;
  bool pass = true;
  os << "instance N=" << sys.n_files << " K=" << sys.n_users << " L=" << sys.n_caches << " t=" << sys.t
     << " m=" << sc.scheme.m() << " s=" << sc.scheme.symbols << " sabotage=" << to_string(sabotage) << '\n';

  if (sc.scheme.sharing) {
    const bool ok = leakage_rank_check(*sc.scheme.sharing);
    os << "rank_check " << (ok ? "pass" : "fail") << " shares=" << sc.scheme.sharing->n_shares
       << " threshold=" << sc.scheme.sharing->n_enc_keys << '\n';
    pass = pass && ok;
  } else {
    os << "rank_check pass (t=0, no shares)\n";
  }

  {
    const Deployment dep = deploy(sc.scheme, sc.assoc, sc.files, sc.seed, sabotage);
    const Transcript tx = deliver(sc.demands, dep);
    std::size_t checked = 0, positive = 0, full = 0;
    for (int k = 1; k <= sys.n_users; ++k) {
      const UserView view = make_user_view(dep, tx, k);
      for (int n = 1; n <= sys.n_files; ++n) {
        if (n == sc.demands.of(k)) continue;
        const auto rep = attempt_eavesdrop(view, n, sc.scheme, sabotage == Sabotage::NoSharesEncryption);
        ++checked;
        if (rep.rank_deficit > 0) ++positive;
        if (rep.leaked_dimension() == 0) full += 1;
        if (rep.rank_deficit == 0 || rep.leaked_dimension() != 0) {
          os << "eavesdrop user " << k << " file " << n << " deficit " << rep.rank_deficit << '/'
             << rep.target_dimension << '\n';
        }
      }
    }
    const bool ok = positive == checked;
    os << "eavesdrop_check " << (ok ? "pass" : "fail") << " pairs=" << checked << " positive_deficit=" << positive
       << " nothing_leaked=" << full << '\n';
    pass = pass && ok;
  }

  const std::size_t bits = brute_force_bits(sc.scheme, sc.assoc);
  if (bits > kMaxBruteForceBits) {
    os << "mi_check out-of-bounds random_bits=" << bits << " limit=" << kMaxBruteForceBits << '\n';
  } else {
    const auto demands = all_demands ? all_distinct_demands(sys.n_files, sys.n_users) : std::vector<DemandVector>{sc.demands};
    const SecrecyReport rep = verify_secrecy_bruteforce(sc.scheme, sc.assoc, demands, sabotage);
    for (const auto& u : rep.users) {
      os << "mi user " << u.user << ' ' << (u.independent ? std::string("0 (exact)") : std::to_string(u.max_mi_bits) + " bits")
         << '\n';
    }
    os << "mi_check " << (rep.perfect() ? "pass" : "fail") << " random_bits=" << bits
       << " demand_vectors=" << rep.demand_vectors << '\n';
    pass = pass && rep.perfect();
  }
  os << "verify " << (pass ? "pass" : "fail") << '\n';
  return {pass ? kExitOk : kExitFailure, os.str()};
}

}  // namespace scc
