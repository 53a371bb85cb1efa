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

#include "pinq/online.h"

#include <cmath>

#include <nlohmann/json.hpp>

#include "pinq/errors.h"

namespace pinq {

OnlineRun::OnlineRun(const Environment& env)
    : env_(&env),
      state_(env),
      decided_(env.size(), 0),
      ignored_(env.size(), 0) {}

double OnlineRun::Price(int e) const {
  if (e < 0 || e >= env_->size()) {
    throw InputDomainError("element " + std::to_string(e) +
                           " outside the universe");
  }
  if (decided_[e] || ignored_[e] || !state_.CanAdd(e)) return kNeverAccept;
  return RulePrice(e);
}

Decision OnlineRun::Offer(int e, double value) {
  if (e < 0 || e >= env_->size()) {
    throw InputDomainError("element " + std::to_string(e) +
                           " outside the universe");
  }
  if (decided_[e]) {
    throw InputDomainError("element " + std::to_string(e) +
                           " was already decided");
  }
  Decision d;
  d.index = e;
  d.value = value;
  d.price = Price(e);
  d.coin = Coin(e);
  decided_[e] = 1;
  d.ignored = ignored_[e] != 0;
  if (!d.ignored && value > d.price) {
    state_.TryAdd(e);
    d.accepted = true;
    OnAccept(e, value);
  }
  return d;
}

void OnlineRun::MarkIgnored(std::span<const int> elements) {
  for (int e : elements) ignored_[e] = 1;
}

RunResult RunOnline(OnlineRun& run, std::span<const int> order,
                    std::span<const double> v) {
  RunResult out;
  out.decisions.reserve(order.size());
  for (int e : order) {
    out.decisions.push_back(run.Offer(e, v[e]));
    if (out.decisions.back().accepted) out.welfare += v[e];
  }
  out.accepted = run.Accepted();
  return out;
}

RunResult RunOnline(OnlineRun& run, std::span<const Arrival> arrivals) {
  RunResult out;
  out.decisions.reserve(arrivals.size());
  for (const auto& a : arrivals) {
    out.decisions.push_back(run.Offer(a.index, a.value));
    if (out.decisions.back().accepted) out.welfare += a.value;
  }
  out.accepted = run.Accepted();
  return out;
}

std::string DecisionTraceJsonl(std::span<const Decision> decisions) {
  std::string out;
  for (const auto& d : decisions) {
    nlohmann::json j;
    j["index"] = d.index;
    j["value"] = d.value;
    // JSON has no infinities; unbounded prices are written as strings.
    if (std::isfinite(d.price)) {
      j["price"] = d.price;
    } else {
      j["price"] = d.price > 0 ? "+inf" : "-inf";
    }
    j["coin"] = d.coin;
    j["decision"] = d.ignored ? "ignored" : (d.accepted ? "accept" : "reject");
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pinq
