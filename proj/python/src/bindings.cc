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

// Structured values cross the boundary as JSON text; the Python package
// wraps these entry points with dict-based helpers.

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pinq/dist.h"
#include "pinq/env.h"
#include "pinq/env_io.h"
#include "pinq/errors.h"
#include "pinq/experiment.h"
#include "pinq/mech.h"
#include "pinq/prophet.h"
#include "pinq/random.h"
#include "pinq/verify.h"
#include "pinq/walk.h"

namespace py = pybind11;

namespace pinq {
namespace {

std::string RunExperimentJson(const std::string& config) {
  const ExperimentConfig c = ExperimentConfigFromJson(nlohmann::json::parse(config));
  ExperimentReport report;
  {
    py::gil_scoped_release release;
    report = RunExperiment(c);
  }
  return ReportToJson(report).dump();
}

std::pair<std::vector<int>, double> OfflineOptJson(const std::string& env,
                                                   const std::vector<double>& w) {
  const OptResult r = OfflineOpt(EnvironmentFromJson(nlohmann::json::parse(env)), w);
  return {r.set, r.weight};
}

std::pair<double, double> MyersonJson(const std::string& env,
                                      const std::string& dist, int trials,
                                      uint64_t seed) {
  const Environment e = EnvironmentFromJson(nlohmann::json::parse(env));
  nlohmann::json d = nlohmann::json::parse(dist);
  if (!d.contains("marginals") && !d.contains("n")) d["n"] = e.size();
  RandomStream rng(seed);
  const Estimate est = MyersonBenchmark(e, DistributionFromJson(d), trials, rng);
  return {est.mean, est.stderr_mean};
}

std::string VerifyJson(const std::string& suite, uint64_t seed, double scale) {
  SuiteResult r;
  {
    py::gil_scoped_release release;
    r = RunVerifySuite(suite, seed, scale);
  }
  nlohmann::json out = nlohmann::json::array();
  for (const CheckResult& c : r.checks) {
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return out.dump();
}

// labels: string over {'S', 'V'}; returns walk positions RW(0..len).
std::vector<int> BuildWalk(const std::string& labels, int k) {
  FlipAssignment f;
  f.k = k;
  for (char ch : labels) {
    if (ch == 'S') f.labels.push_back(Label::kSample);
    else if (ch == 'V') f.labels.push_back(Label::kValue);
    else throw InputDomainError("walk labels must be 'S' or 'V'");
  }
  return BuildRw(f).positions;
}

std::tuple<double, double, bool> TwoSample(
    const std::vector<std::pair<int64_t, int64_t>>& couples, int k) {
  const TwoSampleBound b = ProphetTwoSampleBound(couples, k);
  return {b.lhs, b.rhs, b.holds};
}

}  // namespace
}  // namespace pinq

PYBIND11_MODULE(_pinq, m) {
  using namespace pinq;
  m.doc() = "Native core of the pinq package.";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InputDomainError>(m, "InputDomainError", PyExc_ValueError);
  py::register_exception<UnsupportedOperationError>(
      m, "UnsupportedOperationError", PyExc_NotImplementedError);

  m.def("run_experiment", &RunExperimentJson, py::arg("config_json"));
  m.def("offline_opt", &OfflineOptJson, py::arg("environment_json"),
        py::arg("weights"));
  m.def("myerson_benchmark", &MyersonJson, py::arg("environment_json"),
        py::arg("distribution_json"), py::arg("trials"), py::arg("seed"));
  m.def("verify", &VerifyJson, py::arg("suite"), py::arg("seed") = 1,
        py::arg("scale") = 1.0);
  m.def("verify_suite_names", &VerifySuiteNames);
  m.def("algorithm_names", &ProphetAlgorithmNames);
  m.def("build_walk", &BuildWalk, py::arg("labels"), py::arg("k"));
  m.def(
      "reflection_identity",
      [](int n, int mm) {
        const ReflectionCounts r = ReflectionIdentity(n, mm);
        return std::make_tuple(r.hit_and_low, r.high_end, r.total);
      },
      py::arg("n"), py::arg("m"));
  m.def("two_sample_bound", &TwoSample, py::arg("couples"), py::arg("k"));
}
