/**************************************************************************
 * analysis.hpp
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

// Closed-form delivery rates, in files, for worst-case (distinct) demands.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "rational.hpp"
#include "topology.hpp"

namespace scc {

class ProfileError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using Profile = std::vector<int>;

inline int profile_users(const Profile& profile) { return std::accumulate(profile.begin(), profile.end(), 0); }

inline void validate_profile(const Profile& profile, int t) {
  if (profile.empty()) throw ProfileError("profile is empty");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] < 0) throw ProfileError("negative group size");
    if (i && profile[i] > profile[i - 1]) throw ProfileError("profile must be non-increasing");
  }
  if (t < 0 || t > static_cast<int>(profile.size()) - 1) throw ProfileError("t must lie in {0, ..., L-1}");
}

/// Transmitted share count sum_{r=1}^{L-t} L_r C(L-r, t).
inline std::int64_t share_transmissions(const Profile& profile, int t) {
  const int lambda = static_cast<int>(profile.size());
  std::int64_t total = 0;
  for (int r = 1; r <= lambda - t; ++r) {
    total += static_cast<std::int64_t>(profile[static_cast<std::size_t>(r - 1)]) *
             static_cast<std::int64_t>(binomial(lambda - r, t));
  }
  return total;
}

/// Secretively achievable rate for profile L at integer t; K for t = 0.
inline Rational rate_secret(const Profile& profile, int t) {
  validate_profile(profile, t);
  if (t == 0) return Rational(profile_users(profile));
  const int lambda = static_cast<int>(profile.size());
  return Rational(share_transmissions(profile, t), static_cast<std::int64_t>(binomial(lambda - 1, t)));
}

/// K / (t+1) for the uniform profile; requires L | K.
inline Rational rate_uniform(int n_users, int n_caches, int t) {
  if (n_caches < 1 || n_users % n_caches != 0) throw ProfileError("uniform profile needs L | K");
  if (t < 0 || t > n_caches - 1) throw ProfileError("t must lie in {0, ..., L-1}");
  const Rational r(n_users, t + 1);
  if (r != rate_secret(Profile(static_cast<std::size_t>(n_caches), n_users / n_caches), t)) {
    throw std::logic_error("uniform rate disagrees with the general formula");
  }
  return r;
}

/// Reference rate of the dedicated-cache secretive scheme with per-user
/// memory M (files): K (N + M - 1) / (N + (M - 1)(K + 1)).
inline Rational rate_dedicated_reference(int n_files, int n_users, Rational memory) {
  if (memory < Rational(1)) throw std::invalid_argument("dedicated reference needs M >= 1");
  const Rational N(n_files);
  const Rational K(n_users);
  return K * (N + memory - Rational(1)) / (N + (memory - Rational(1)) * (K + Rational(1)));
}

/// Rate of the shared-cache scheme without the secrecy constraint (uncoded
/// placement of sub-files instead of shares), used only as a comparison
/// baseline: sum_r L_r C(L-r, t) / C(L, t).
inline Rational rate_nonsecret_reference(const Profile& profile, int t) {
  validate_profile(profile, t);
  const int lambda = static_cast<int>(profile.size());
  return Rational(share_transmissions(profile, t), static_cast<std::int64_t>(binomial(lambda, t)));
}

struct RatePoint {
  int t = 0;
  Rational memory;
  Rational rate;
};

/// Achievable (M, R) pairs for t = 0..L-1.
inline std::vector<RatePoint> rate_points(const Profile& profile, int n_files) {
  std::vector<RatePoint> pts;
  const int lambda = static_cast<int>(profile.size());
  for (int t = 0; t < lambda; ++t) pts.push_back({t, SystemParams::memory_for(n_files, lambda, t), rate_secret(profile, t)});
  return pts;
}

/// Vertices of the lower convex envelope of the rate points, by memory.
inline std::vector<RatePoint> lower_envelope(std::vector<RatePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) { return a.memory < b.memory; });
  std::vector<RatePoint> hull;
  for (const auto& p : pts) {
    // Pop while the last two hull points and p do not turn counter-clockwise.
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rational cross = (b.memory - a.memory) * (p.rate - a.rate) - (b.rate - a.rate) * (p.memory - a.memory);
      if (cross > Rational(0)) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

/// Memory-sharing rate at an arbitrary helper-cache size in [0, N(L-1)].
inline Rational rate_envelope(const Profile& profile, int n_files, const Rational& memory) {
  validate_profile(profile, 0);
  const int lambda = static_cast<int>(profile.size());
  const Rational max_memory(static_cast<std::int64_t>(n_files) * (lambda - 1));
  if (memory < Rational(0) || memory > max_memory) {
    throw std::out_of_range("memory must lie in [0, " + to_fraction(max_memory) + "]");
  }
  const auto hull = lower_envelope(rate_points(profile, n_files));
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[i + 1];
    if (memory >= a.memory && memory <= b.memory) {
      return a.rate + (b.rate - a.rate) * (memory - a.memory) / (b.memory - a.memory);
    }
  }
  return hull.back().rate;
}

inline double rate_envelope(const Profile& profile, int n_files, double memory) {
  // Exact on the rational grid 1/2^20; the envelope is piecewise linear.
  const std::int64_t den = std::int64_t{1} << 20;
  const auto num = static_cast<std::int64_t>(memory * static_cast<double>(den) + (memory >= 0 ? 0.5 : -0.5));
  return to_double(rate_envelope(profile, n_files, Rational(num, den)));
}

/// Every non-increasing profile of `n_users` over `n_caches` caches (zero
/// entries allowed), in lexicographically decreasing order.
inline std::vector<Profile> enumerate_profiles(int n_users, int n_caches) {
  std::vector<Profile> out;
  Profile cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (static_cast<int>(cur.size()) == n_caches) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int v = std::min(cap, remaining); v >= 0; --v) {
      cur.push_back(v);
      rec(remaining - v, v);
      cur.pop_back();
    }
  };
  rec(n_users, n_users);
  return out;
}

/// True iff the uniform profile attains the minimum rate at this t among
/// all profiles of K users over L caches.
inline bool uniform_is_minimum_check(int n_users, int n_caches, int t) {
  const Rational uniform = rate_uniform(n_users, n_caches, t);
  for (const auto& p : enumerate_profiles(n_users, n_caches)) {
    if (rate_secret(p, t) < uniform) return false;
  }
  return true;
}

}  // namespace scc
