// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pinq run <config.json> | verify <suite> | list-algorithms
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pinq/errors.h"
#include "pinq/experiment.h"
#include "pinq/prophet.h"
#include "pinq/verify.h"

namespace {

int Run(const std::string& path, const std::optional<std::string>& format,
        const std::optional<std::string>& output,
        const std::optional<int>& trials, const std::optional<uint64_t>& seed) {
  std::ifstream in(path);
  if (!in) throw pinq::ConfigError("cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw pinq::ConfigError(path + ": " + e.what());
  }
  if (format) j["format"] = *format;
  if (output) j["output"] = *output;
  if (trials) j["trials"] = *trials;
  if (seed) j["seed"] = *seed;
  const pinq::ExperimentConfig config = pinq::ExperimentConfigFromJson(j);
  const pinq::ExperimentReport report = pinq::RunExperiment(config);

  const std::string body = config.format == "csv"
                               ? pinq::ReportToCsv(report)
                               : pinq::ReportToJson(report).dump(2) + "\n";
  if (config.output.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(config.output);
  if (!out) throw pinq::ConfigError("cannot write " + config.output);
  out << body;
  nlohmann::json summary = pinq::ReportToJson(report);
  summary.erase("records");
  summary.erase("config");
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int Verify(const std::string& suite, uint64_t seed, double scale) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = pinq::VerifySuiteNames();
  } else {
    suites.push_back(suite);
  }
  bool all = true;
  for (const auto& name : suites) {
    const pinq::SuiteResult r = pinq::RunVerifySuite(name, seed, scale);
    for (const auto& c : r.checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << r.suite << ": " << c.name
                << " [" << c.detail << "]\n";
    }
    all = all && r.passed();
  }
  return all ? 0 : 1;
}

void ListAlgorithms() {
  std::cout << "prophet algorithms:\n";
  for (const auto& name : pinq::ProphetAlgorithmNames()) {
    std::cout << "  " << name << "\n";
  }
  std::cout << "  free-order (mechanism chooses the order)\n";
  std::cout << "environment bindings:\n";
  for (const auto& cls : pinq::ProphetEnvClasses()) {
    const pinq::ProphetBinding b = pinq::ProphetFor(cls);
    std::cout << "  " << cls << " -> " << b.algorithm << "  ratio "
              << b.ratio_label << (b.approximate ? " (approximate)" : "")
              << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prophet inequalities and posted-price mechanisms from samples"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  std::string config_path;
  std::optional<std::string> format, output;
  std::optional<int> trials;
  std::optional<uint64_t> run_seed;
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--output", output, "Write the report here");
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--seed", run_seed, "Override the seed");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  uint64_t verify_seed = 1;
  double scale = 1.0;
  std::vector<std::string> choices = pinq::VerifySuiteNames();
  choices.push_back("all");
  verify->add_option("suite", suite, "Suite name or 'all'")
      ->required()
      ->check(CLI::IsMember(choices));
  verify->add_option("--seed", verify_seed, "Seed for randomized checks");
  verify->add_option("--scale", scale, "Fraction of the default trial counts")
      ->check(CLI::Range(1e-6, 1.0));

  app.add_subcommand("list-algorithms", "List algorithms and bindings");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return Run(config_path, format, output, trials, run_seed);
    if (*verify) return Verify(suite, verify_seed, scale);
    ListAlgorithms();
    return 0;
  } catch (const pinq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const pinq::InputDomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const pinq::UnsupportedOperationError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
  }
  return 2;
}
