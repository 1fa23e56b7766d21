/**************************************************************************
 * scc_cli.cpp
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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scc/scenario.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

struct ScenarioFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string demands;
};

scc::Scenario scenario_from(const ScenarioFlags& f) {
  scc::ScenarioConfig cfg = scc::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.demands.empty()) cfg.demands = scc::parse_demands(f.demands);
  return scc::build_scenario(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secretive coded caching with shared helper caches"};
  app.require_subcommand(1);

  ScenarioFlags run_flags;
  std::string out_path;
  auto* run = app.add_subcommand("run", "place, deliver and decode one scenario");
  run->add_option("--config", run_flags.config, "scenario config file")->required();
  run->add_option("--seed", run_flags.seed, "override the config seed");
  run->add_option("--demands", run_flags.demands, "override demands, e.g. 3,1,2");
  run->add_option("--out", out_path, "transcript output path");

  std::string profile_csv;
  std::optional<int> caches;
  std::optional<int> files;
  std::optional<int> t_single;
  bool sweep = false;
  auto* rate = app.add_subcommand("rate", "rate table as CSV");
  rate->add_option("--profile", profile_csv, "user association profile, e.g. 13,8,4,2,2,1")->required();
  rate->add_option("--caches", caches, "number of helper caches (pads the profile with zeros)");
  rate->add_option("--files", files, "library size N (default K)");
  auto* t_opt = rate->add_option("--t", t_single, "single caching parameter");
  auto* sweep_opt = rate->add_flag("--sweep", sweep, "all t = 0..L-1 (default)");
  t_opt->excludes(sweep_opt);

  ScenarioFlags verify_flags;
  std::string sabotage = "none";
  auto* verify = app.add_subcommand("verify", "rank, eavesdrop and exhaustive secrecy checks");
  verify->add_option("--config", verify_flags.config, "scenario config file")->required();
  verify->add_option("--seed", verify_flags.seed, "override the config seed");
  verify->add_option("--demands", verify_flags.demands, "check only this demand vector");
  verify->add_option("--sabotage", sabotage, "break the scheme on purpose")
      ->check(CLI::IsMember({"none", "no-keys", "no-shares-encryption"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? scc::kExitOk : scc::kExitUsage;
  }

  try {
    if (*run) {
      const scc::RunResult r = scc::run_scenario(scenario_from(run_flags));
      std::string path = out_path;
      if (path.empty()) path = scc::load_config(run_flags.config).transcript_path;
      if (!path.empty()) write_file(path, r.transcript);
      std::cout << r.summary;
      return r.exit_code;
    }
    if (*rate) {
      const scc::Profile profile = scc::parse_profile(profile_csv, caches);
      const int n_files = files.value_or(scc::profile_users(profile));
      if (n_files < scc::profile_users(profile)) throw scc::ProfileError("need N >= K");
      std::vector<int> ts;
      if (t_single) {
        ts.push_back(*t_single);
      } else {
        for (int t = 0; t < static_cast<int>(profile.size()); ++t) ts.push_back(t);
      }
      std::cout << scc::rate_csv(scc::rate_rows(profile, n_files, ts));
      return scc::kExitOk;
    }
    if (*verify) {
      const scc::VerifyResult r =
          scc::verify_scenario(scenario_from(verify_flags), scc::parse_sabotage(sabotage), verify_flags.demands.empty());
      std::cout << r.report;
      return r.exit_code;
    }
  } catch (const scc::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return scc::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return scc::kExitFailure;
  }
  return scc::kExitUsage;
}
