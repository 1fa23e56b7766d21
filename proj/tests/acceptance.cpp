/**************************************************************************
 * acceptance.cpp
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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any of them fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "scc/analysis.hpp"
#include "scc/eavesdrop.hpp"
#include "scc/scenario.hpp"
#include "scc/secrecy.hpp"

namespace {

using namespace scc;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
public:
  void require(bool cond, const std::string& what) {
    if (!cond && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  Outcome finish() {
    if (out_.pass) out_.detail = notes_.str();
    return out_;
  }

private:
  Outcome out_;
  std::ostringstream notes_;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

bool all_decode(const Deployment& dep, const Transcript& tx) {
  for (int k = 1; k <= dep.scheme.system.n_users; ++k) {
    try {
      const FileData got = decode(make_user_view(dep, tx, k), dep.scheme);
      if (got.subfiles != dep.files.at(static_cast<std::size_t>(tx.demands.of(k) - 1)).subfiles) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

// N=K=M=3, L=2, profile (2,1), t=1.
Outcome criterion1() {
  Checker c;
  const auto t0 = Clock::now();
  const auto sc = build_scenario(parse_config("files = 3\nt = 1\nfile_bits = 64\nseed = 2024\nassociation = 1,2;3\n"));
  c.require(sc.scheme.system.helper_cache_size == Rational(3), "M != 3");
  const auto dep = deploy(sc.scheme, sc.assoc, sc.files, sc.seed);
  const auto tx = deliver(sc.demands, dep);
  c.require(tx.transmissions.size() == 2, "transmissions != 2");
  c.require(tx.rate() == Rational(2), "rate != 2");
  c.require(all_decode(dep, tx), "decode mismatch");
  // Bit-exact against the original bytes as well.
  for (int k = 1; k <= 3; ++k) {
    const FileData got = decode(make_user_view(dep, tx, k), sc.scheme);
    c.require(file_bytes(got, *sc.scheme.sharing) == file_bytes(sc.files[static_cast<std::size_t>(k - 1)], *sc.scheme.sharing),
              "byte mismatch for user " + std::to_string(k));
  }
  const double s = seconds_since(t0);
  c.require(s < 1.0, "runtime " + fmt_seconds(s) + " >= 1s");
  c.note("2 transmissions, rate 2/1, 3/3 decoded, " + fmt_seconds(s));
  return c.finish();
}

// N=K=8, L=4, M=8, t=2, profile (3,2,2,1).
Outcome criterion2() {
  Checker c;
  const auto t0 = Clock::now();
  const auto sc = build_scenario(parse_config("files = 8\nmemory = 8\nfile_bits = 96\nassociation = 1,2,3;4,5;6,7;8\n"));
  c.require(sc.scheme.system.t == 2, "t != 2");
  const auto dep = deploy(sc.scheme, sc.assoc, sc.files, sc.seed);
  const auto tx = deliver(sc.demands, dep);
  std::map<int, int> per_round;
  for (const auto& x : tx.transmissions) ++per_round[x.round];
  c.require(tx.transmissions.size() == 11, "transmissions != 11");
  c.require(per_round == std::map<int, int>{{1, 4}, {2, 4}, {3, 3}}, "round split != 4/4/3");
  c.require(tx.rate() == Rational(11, 3), "rate != 11/3");
  c.require(all_decode(dep, tx), "decode failure");

  // Cache lambda holds, for every file, the shares labelled by the pairs containing lambda.
  const std::vector<std::vector<IdSet>> labels{{{1, 2}, {1, 3}, {1, 4}},
                                               {{1, 2}, {2, 3}, {2, 4}},
                                               {{1, 3}, {2, 3}, {3, 4}},
                                               {{1, 4}, {2, 4}, {3, 4}}};
  for (int lambda = 1; lambda <= 4; ++lambda) {
    const auto& cache = dep.caches[static_cast<std::size_t>(lambda - 1)];
    c.require(cache.shares.size() == 24, "cache " + std::to_string(lambda) + " share count");
    for (int n = 1; n <= 8; ++n) {
      for (const auto& l : labels[static_cast<std::size_t>(lambda - 1)]) {
        const CachedShare* cs = cache.find(n, l);
        c.require(cs && cs->data == dep.library[static_cast<std::size_t>(n - 1)].shares[SubsetIndex(4, 2).rank(l) - 1],
                  "cache " + std::to_string(lambda) + " missing share");
      }
    }
  }
  c.require(dep.keys.size() == 11, "key count != 11");
  for (int k = 1; k <= 8; ++k) c.require(dep.keys.held_by(k).size() == 3, "user " + std::to_string(k) + " key count != 3");
  const double s = seconds_since(t0);
  c.require(s < 1.0, "runtime " + fmt_seconds(s) + " >= 1s");
  c.note("11 transmissions (4/4/3), rate 11/3, 8/8 decoded, 3 keys per user, " + fmt_seconds(s));
  return c.finish();
}

// Formula vs simulation over every association map.
Outcome criterion3() {
  Checker c;
  const auto t0 = Clock::now();
  std::size_t instances = 0;
  for (int lambda = 2; lambda <= 4; ++lambda) {
    for (int K = lambda; K <= 6; ++K) {
      fixture::for_each_association(K, lambda, [&](const Association& assoc) {
        for (int t = 0; t < lambda; ++t) {
          const auto scheme = SchemeParams::make(SystemParams::make(K, K, lambda, t, fixture::one_symbol_bits(lambda, t)));
          const auto dep = deploy(scheme, assoc, random_library(scheme, instances), instances);
          const auto tx = deliver(DemandVector::identity(K), dep);
          const Rational measured(static_cast<std::int64_t>(tx.total_bits()), static_cast<std::int64_t>(scheme.padded_file_bits()));
          c.require(measured == rate_secret(assoc.profile(), t), "rate mismatch at " + assoc.to_string() + " t=" + std::to_string(t));
          c.require(all_decode(dep, tx), "decode failure at " + assoc.to_string() + " t=" + std::to_string(t));
          ++instances;
        }
      });
    }
  }
  const double s = seconds_since(t0);
  c.require(s < 60.0, "runtime " + fmt_seconds(s) + " >= 60s");
  c.note(std::to_string(instances) + " instances, " + fmt_seconds(s));
  return c.finish();
}

// Exact mutual information on the two brute-force instances.
Outcome criterion4() {
  Checker c;
  const auto t0 = Clock::now();
  const auto tiny = SchemeParams::make(SystemParams::make(2, 2, 2, 1, 2), 2);
  const auto tiny_assoc = Association::from_groups({{1}, {2}});
  const auto tiny3 = SchemeParams::make(SystemParams::make(3, 3, 2, 1, 2), 2);
  const auto tiny3_assoc = fixture::two_cache();
  c.require(tiny.symbols == 1 && tiny3.symbols == 1 && tiny.m() == 2, "instance shape");

  const auto a = verify_secrecy_bruteforce(tiny, tiny_assoc, all_distinct_demands(2, 2));
  const auto b = verify_secrecy_bruteforce(tiny3, tiny3_assoc, all_distinct_demands(3, 3));
  c.require(a.perfect() && a.users.size() == 2, "MI > 0 on N=K=L=2");
  c.require(b.perfect() && b.users.size() == 3, "MI > 0 on N=K=3, L=2");

  // Negative control: keys omitted.
  const auto neg3 = verify_secrecy_bruteforce(tiny3, tiny3_assoc, all_distinct_demands(3, 3), Sabotage::NoKeys);
  c.require(!neg3.perfect() && neg3.max_mi_bits() > 0.0, "keyless control shows no leakage on N=K=3, L=2");
  // On N=K=L=2 the single broadcast only carries shares each receiver already
  // caches or requested, so the keyless control cannot leak there.
  const auto neg2 = verify_secrecy_bruteforce(tiny, tiny_assoc, all_distinct_demands(2, 2), Sabotage::NoKeys);
  const double s = seconds_since(t0);
  c.require(s < 300.0, "runtime " + fmt_seconds(s) + " >= 300s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "MI = 0 exactly for 2+3 users over 2+6 demand vectors; keyless MI %.1f bits (N=K=3), %s (N=K=L=2)",
                neg3.max_mi_bits(), neg2.perfect() ? "0" : "> 0");
  c.note(buf);
  c.note(fmt_seconds(s));
  return c.finish();
}

// Rank-based secrecy: leakage check for L <= 6 and eavesdrop deficits on the four-cache system.
Outcome criterion5() {
  Checker c;
  const auto t0 = Clock::now();
  int pairs = 0;
  for (int lambda = 2; lambda <= 6; ++lambda) {
    for (int t = 1; t < lambda; ++t) {
      c.require(leakage_rank_check(SharingParams::make(lambda, t, 1)), "rank check L=" + std::to_string(lambda) + " t=" + std::to_string(t));
      ++pairs;
    }
  }
  const auto sc = build_scenario(parse_config("files = 8\nt = 2\nfile_bits = 96\nassociation = 1,2,3;4,5;6,7;8\n"));
  const auto dep = deploy(sc.scheme, sc.assoc, sc.files, sc.seed);
  const auto tx = deliver(sc.demands, dep);
  int checked = 0;
  for (int k = 1; k <= 8; ++k) {
    const auto view = make_user_view(dep, tx, k);
    for (int n = 1; n <= 8; ++n) {
      if (n == sc.demands.of(k)) continue;
      const auto rep = attempt_eavesdrop(view, n, sc.scheme);
      c.require(rep.rank_deficit > 0, "zero deficit for user " + std::to_string(k) + " file " + std::to_string(n));
      ++checked;
    }
  }
  const double s = seconds_since(t0);
  c.require(s < 60.0, "runtime " + fmt_seconds(s) + " >= 60s");
  c.note(std::to_string(pairs) + " (L,t) pairs, " + std::to_string(checked) + " eavesdrop pairs, " + fmt_seconds(s));
  return c.finish();
}

// Closed-form special cases.
Outcome criterion6() {
  Checker c;
  int cases = 0;
  for (int lambda = 1; lambda <= 8; ++lambda) {
    for (int K = lambda; K <= 8 * lambda; K += lambda) {
      for (int t = 0; t < lambda; ++t) {
        c.require(rate_secret(Profile(static_cast<std::size_t>(lambda), K / lambda), t) == Rational(K, t + 1), "uniform");
        ++cases;
      }
    }
  }
  for (int K = 1; K <= 12; ++K) {
    for (int N = K; N <= K + 6; ++N) {
      for (int t = 0; t < K; ++t) {
        const Rational M(N * t, K - t);
        const Rational expect = Rational(K) * (Rational(N) + M) / (Rational(N) + M * Rational(K + 1));
        c.require(rate_secret(Profile(static_cast<std::size_t>(K), 1), t) == expect, "dedicated K=" + std::to_string(K));
        c.require(rate_dedicated_reference(N, K, M + Rational(1)) == expect, "reference K=" + std::to_string(K));
        ++cases;
      }
    }
  }
  for (int lambda = 1; lambda <= 8; ++lambda) {
    for (int K = lambda; K <= 12; ++K) {
      Profile p(static_cast<std::size_t>(lambda), 0);
      p[0] = K;
      for (int t = 0; t < lambda; ++t) {
        c.require(rate_secret(p, t) == Rational(K), "single-cache profile");
        ++cases;
      }
    }
  }
  c.note(std::to_string(cases) + " exact equalities");
  return c.finish();
}

// Rate orderings at N=K=30, L=6 and exhaustive K=6, L=3.
Outcome criterion7() {
  Checker c;
  const Profile skew{13, 8, 4, 2, 2, 1};
  const Profile uni(6, 5);
  const std::vector<int> ts{0, 1, 2, 3, 4, 5};
  const auto skew_rows = rate_rows(skew, 30, ts);
  const auto uni_rows = rate_rows(uni, 30, ts);
  c.require(skew_rows.size() == 6, "sweep rows");
  for (std::size_t i = 0; i < skew_rows.size(); ++i) {
    for (const auto* rows : {&skew_rows, &uni_rows}) {
      const auto& r = (*rows)[i];
      if (r.t == 0) {
        c.require(r.secret == r.nonsecret && r.secret == Rational(30), "t=0 rates != 30");
      } else {
        c.require(r.secret > r.nonsecret, "secret <= nonsecret at t=" + std::to_string(r.t));
      }
    }
    c.require(uni_rows[i].secret == Rational(30, uni_rows[i].t + 1), "uniform column != 30/(t+1)");
    c.require(uni_rows[i].secret <= skew_rows[i].secret, "uniform above skewed at t=" + std::to_string(uni_rows[i].t));
  }
  const std::string csv = rate_csv(skew_rows);
  c.require(csv.rfind(kRateCsvHeader, 0) == 0, "csv header");
  c.require(std::count(csv.begin(), csv.end(), '\n') == 7, "csv row count");

  int profiles = 0;
  for (int t = 0; t < 3; ++t) {
    c.require(uniform_is_minimum_check(6, 3, t), "uniform not minimal at K=6 L=3 t=" + std::to_string(t));
    for (const auto& p : enumerate_profiles(6, 3)) {
      c.require(rate_secret({2, 2, 2}, t) <= rate_secret(p, t), "profile " + format_ids(p));
      if (t == 0) ++profiles;
    }
  }
  c.note("6-row sweeps; " + std::to_string(profiles) + " profiles at K=6, L=3");
  return c.finish();
}

// Byte-identical transcripts for identical config and seed.
Outcome criterion8() {
  Checker c;
  const std::vector<std::string> configs{
      "files = 3\nt = 1\nfile_bits = 64\nseed = 2024\nassociation = 1,2;3\n",
      "files = 8\nmemory = 8\nfile_bits = 96\nseed = 7\nassociation = 1,2,3;4,5;6,7;8\n",
      "files = 5\nt = 0\nfile_bits = 33\nseed = 9\nassociation = 1,2;3,4;5\n",
  };
  for (const auto& text : configs) {
    const auto a = run_scenario(build_scenario(parse_config(text)));
    const auto b = run_scenario(build_scenario(parse_config(text)));
    c.require(a.transcript == b.transcript && a.summary == b.summary, "transcript differs between runs");
    auto other = parse_config(text);
    other.seed += 1;
    c.require(run_scenario(build_scenario(other)).transcript != a.transcript, "seed has no effect");
  }
  c.note(std::to_string(configs.size()) + " configs run twice");
  return c.finish();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"three users on two caches", criterion1},
      {"eight users on four caches", criterion2},
      {"formula vs simulation", criterion3},
      {"exact perfect secrecy", criterion4},
      {"rank-based secrecy at scale", criterion5},
      {"special-case reductions", criterion6},
      {"rate orderings", criterion7},
      {"determinism", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
