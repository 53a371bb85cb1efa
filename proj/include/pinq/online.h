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

// Common shape of every online selection rule in the library.
//
// A rule is a posted-price process: when element e arrives, the rule has a
// critical price Price(e) computed from its state, and e is accepted iff its
// value is strictly above that price. The price never depends on e's own
// value, so every rule is monotone and the price is the threshold payment.

#ifndef PINQ_ONLINE_H_
#define PINQ_ONLINE_H_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pinq/env.h"

namespace pinq {

inline constexpr double kNeverAccept = std::numeric_limits<double>::infinity();
inline constexpr double kAlwaysAccept = -std::numeric_limits<double>::infinity();

struct Arrival {
  int index = 0;
  double value = 0.0;
};

// One irrevocable online decision.
struct Decision {
  int index = 0;
  double value = 0.0;
  double price = 0.0;
  // Random coin consumed by the rule for this element, or -1 if none.
  int coin = -1;
  // Element belongs to the sample phase and is skipped without a decision.
  bool ignored = false;
  bool accepted = false;
};

class OnlineRun {
 public:
  explicit OnlineRun(const Environment& env);
  virtual ~OnlineRun() = default;
  OnlineRun(const OnlineRun&) = delete;
  OnlineRun& operator=(const OnlineRun&) = delete;

  const Environment& env() const { return *env_; }

  // Critical price for e in the current state. kNeverAccept when e was
  // already decided, is ignored, or cannot be added feasibly.
  double Price(int e) const;
  // Decides e once; InputDomainError if e was decided before.
  Decision Offer(int e, double value);

  bool Ignored(int e) const { return ignored_[e] != 0; }
  bool Decided(int e) const { return decided_[e] != 0; }
  virtual int Coin(int /*e*/) const { return -1; }

  FeasibleSet Accepted() const { return state_.SortedMembers(); }
  // Accepted elements in acceptance order.
  const std::vector<int>& AcceptedInOrder() const { return state_.members(); }

 protected:
  // Rule-specific price; only called for undecided, non-ignored elements
  // that keep the accepted set feasible.
  virtual double RulePrice(int e) const = 0;
  virtual void OnAccept(int /*e*/, double /*value*/) {}

  void MarkIgnored(std::span<const int> elements);

 private:
  const Environment* env_;
  IndependenceState state_;
  std::vector<char> decided_;
  std::vector<char> ignored_;
};

struct RunResult {
  FeasibleSet accepted;
  double welfare = 0.0;
  std::vector<Decision> decisions;
};

// Offers elements in `order` with values v[order[i]].
RunResult RunOnline(OnlineRun& run, std::span<const int> order,
                    std::span<const double> v);
RunResult RunOnline(OnlineRun& run, std::span<const Arrival> arrivals);

// One JSON object per line: index, value, price, coin, decision.
std::string DecisionTraceJsonl(std::span<const Decision> decisions);

}  // namespace pinq

#endif  // PINQ_ONLINE_H_
