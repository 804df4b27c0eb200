// Copyright 2026 The qcausal Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qcausal/scenario.hpp"

namespace {

using qcausal::cli::ConfigError;
using qcausal::cli::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const Json& j, const std::optional<std::string>& path) {
  const std::string text = j.dump(2) + "\n";
  if (path) {
    std::ofstream out(*path, std::ios::binary);
    if (!out)
      throw ConfigError("cannot write '" + *path + "'");
    out << text;
  } else {
    std::cout << text;
  }
}

int config_error(const std::string& message) {
  Json err = Json::object();
  err["error"] = {{"type", "config"}, {"message", message}};
  std::cout << err.dump(2) << "\n";
  return kExitConfig;
}

void list_scenarios() {
  for (const auto& s : qcausal::cli::scenarios()) {
    std::cout << s.name << "\n    " << s.summary << "\n";
    for (const auto& p : s.params) {
      std::cout << "      " << p.key << " = "
                << (p.default_value.is_null() ? std::string("(preset)") : p.default_value.dump())
                << "  " << p.help << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indefinite causal order and gravitational timing scenarios"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "List scenarios and their parameters");

  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string scenario, config_path, out_path;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  auto* scenario_opt = run->add_option("--scenario", scenario, "Scenario name");
  run->add_option("--param", params, "Parameter override key=value")->allow_extra_args(false);
  auto* seed_opt = run->add_option("--seed", seed, "Random seed (default 0)");
  auto* out_opt = run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--config", config_path, "JSON configuration file; flags override it")
      ->check(CLI::ExistingFile);

  auto* suite = app.add_subcommand("suite", "Run a suite of scenarios");
  std::string suite_path, suite_out;
  suite->add_option("--config", suite_path, "Suite file")->required()->check(CLI::ExistingFile);
  auto* suite_out_opt = suite->add_option("--out", suite_out, "Write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return config_error(e.what());
  }

  try {
    if (list) {
      list_scenarios();
      return kExitPass;
    }
    if (*run) {
      qcausal::cli::ScenarioConfig cfg;
      if (!config_path.empty())
        cfg = qcausal::cli::parse_config(read_json_file(config_path));
      if (*scenario_opt)
        cfg.scenario = scenario;
      if (cfg.scenario.empty())
        throw ConfigError("run needs --scenario or a config file naming one");
      for (const auto& kv : params) {
        auto [k, v] = qcausal::cli::parse_param_flag(kv);
        cfg.params[k] = v;
      }
      if (*seed_opt)
        cfg.seed = seed;
      if (*out_opt)
        cfg.output_path = out_path;
      const auto report = qcausal::cli::run_scenario(cfg);
      emit(report.to_json(), cfg.output_path);
      return report.pass() ? kExitPass : kExitFail;
    }
    if (*suite) {
      const auto configs = qcausal::cli::parse_suite(read_json_file(suite_path));
      const auto result = qcausal::cli::run_suite(configs);
      emit(result.to_json(),
           *suite_out_opt ? std::optional<std::string>(suite_out) : std::nullopt);
      return result.pass() ? kExitPass : kExitFail;
    }
    std::cout << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    return config_error(e.what());
  }
}
