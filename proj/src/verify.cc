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

#include "pinq/verify.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "pinq/errors.h"
#include "pinq/experiment.h"
#include "pinq/mech.h"
#include "pinq/online.h"
#include "pinq/prophet.h"
#include "pinq/secretary.h"
#include "pinq/walk.h"

namespace pinq {
namespace {

constexpr double kTol = 1e-9;

int Scaled(int trials, double scale) {
  return std::max(1, static_cast<int>(std::lround(trials * scale)));
}

std::string Fraction(int64_t num, int64_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

int RandomInt(RandomStream& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.UniformInt(static_cast<uint64_t>(hi - lo + 1)));
}

void AddLaminarSets(const std::vector<int>& perm, int lo, int hi,
                    RandomStream& rng, std::vector<std::vector<int>>& family,
                    std::vector<int>& caps) {
  if (hi <= lo) return;
  if (rng.Bernoulli(0.6)) {
    family.emplace_back(perm.begin() + lo, perm.begin() + hi);
    caps.push_back(RandomInt(rng, 1, hi - lo));
  }
  if (hi - lo >= 2) {
    const int mid = RandomInt(rng, lo + 1, hi - 1);
    AddLaminarSets(perm, lo, mid, rng, family, caps);
    AddLaminarSets(perm, mid, hi, rng, family, caps);
  }
}

// One randomized posted-price scenario.
struct Scenario {
  Environment env = Environment::Uniform(1, 1);
  std::string algorithm;
  ProductDistribution dist{std::vector<Marginal>{}};
  std::vector<WeightVector> samples;
  WeightVector v;
  std::vector<int> order;
  ReservePolicy policy;
  RandomStream alg_rng{0};
};

Marginal RandomMarginal(RandomStream& rng) {
  switch (rng.UniformInt(5)) {
    case 0: return Marginal::Uniform(0.0, 1.0);
    case 1: return Marginal::Uniform(0.0, 1.0 + 3.0 * rng.Uniform01());
    case 2: return Marginal::Exponential(0.5 + 2.0 * rng.Uniform01());
    case 3: return Marginal::TruncatedEqualRevenue(2.0 + 8.0 * rng.Uniform01());
    default:
      return Marginal::Empirical({0.0, 1.0, 2.0, 3.0}, {0.25, 0.25, 0.25, 0.25});
  }
}

ReservePolicy RandomPolicy(const ProductDistribution& dist, RandomStream& rng) {
  ReservePolicy p;
  p.application =
      rng.Bernoulli(0.5) ? ReserveApplication::kLazy : ReserveApplication::kEager;
  switch (rng.UniformInt(4)) {
    case 0: p.kind = ReserveKind::kNone; break;
    case 1:
      p.kind = dist.all_regular() ? ReserveKind::kMonopoly
                                  : ReserveKind::kSingleSample;
      break;
    case 2: p.kind = ReserveKind::kSingleSample; break;
    default:
      p.kind = ReserveKind::kQuantile;
      p.quantile = rng.Uniform01();
      break;
  }
  return p;
}

constexpr EnvKind kAllKinds[] = {EnvKind::kUniform,     EnvKind::kPartition,
                                 EnvKind::kLaminar,     EnvKind::kGraphic,
                                 EnvKind::kTransversal, EnvKind::kBipartiteMatching};
constexpr EnvKind kMatroidKinds[] = {EnvKind::kUniform, EnvKind::kPartition,
                                     EnvKind::kLaminar, EnvKind::kGraphic,
                                     EnvKind::kTransversal};

Scenario RandomScenario(RandomStream& rng, bool allow_reserves = true) {
  Scenario sc;
  const EnvKind kind = kAllKinds[rng.UniformInt(std::size(kAllKinds))];
  sc.env = RandomEnvironment(kind, RandomInt(rng, 1, 10), rng);
  const auto algs = CompatibleAlgorithms(kind);
  sc.algorithm = algs[rng.UniformInt(algs.size())];
  const int n = sc.env.size();
  sc.dist = rng.Bernoulli(0.5)
                ? ProductDistribution::Iid(RandomMarginal(rng), n)
                : [&] {
                    std::vector<Marginal> ms;
                    for (int i = 0; i < n; ++i) ms.push_back(RandomMarginal(rng));
                    return ProductDistribution(std::move(ms));
                  }();
  const int profiles = MakeProphetAlgorithm(sc.algorithm)->SampleProfiles(sc.env);
  for (int p = 0; p < std::max(profiles, 1); ++p) {
    sc.samples.push_back(sc.dist.Sample(rng));
  }
  sc.v = sc.dist.Sample(rng);
  sc.order = rng.Permutation(n);
  if (allow_reserves) sc.policy = RandomPolicy(sc.dist, rng);
  sc.alg_rng = rng.Fork(7);
  return sc;
}

MechanismOutcome RunScenario(const Scenario& sc, std::span<const double> v,
                             const ReservePolicy& policy) {
  const auto alg = MakeProphetAlgorithm(sc.algorithm);
  RandomStream r = sc.alg_rng;
  return RunPostedPriceMechanism(sc.env, *alg, sc.samples, sc.order, v, policy,
                                 sc.dist, r);
}

std::vector<Decision> RunDecisions(const Scenario& sc,
                                   std::span<const int> order) {
  const auto alg = MakeProphetAlgorithm(sc.algorithm);
  RandomStream r = sc.alg_rng;
  PreparedRun prepared = alg->Prepare(sc.env, sc.samples, r);
  return RunOnline(*prepared.run, order, sc.v).decisions;
}

double Utility(const MechanismOutcome& o, int e, double value) {
  for (size_t i = 0; i < o.winners.size(); ++i) {
    if (o.winners[i] == e) return value - o.payments[i];
  }
  return 0.0;
}

bool Wins(const MechanismOutcome& o, int e) {
  return std::find(o.winners.begin(), o.winners.end(), e) != o.winners.end();
}

std::string Describe(const Scenario& sc) {
  std::ostringstream out;
  out << EnvKindName(sc.env.kind()) << " n=" << sc.env.size() << " alg="
      << sc.algorithm;
  return out.str();
}

// Runs `body` on `cases` scenarios; body returns an empty string on success.
template <typename Body>
CheckResult ForScenarios(const std::string& name, int cases, uint64_t seed,
                         bool allow_reserves, Body body) {
  CheckResult r{name, true, ""};
  int failures = 0;
  for (int c = 0; c < cases; ++c) {
    RandomStream rng(seed, static_cast<uint64_t>(c));
    const Scenario sc = RandomScenario(rng, allow_reserves);
    const std::string why = body(sc, rng);
    if (!why.empty()) {
      if (failures++ == 0) r.detail = "case " + std::to_string(c) + " (" +
                                      Describe(sc) + "): " + why;
    }
  }
  r.passed = failures == 0;
  r.detail = std::to_string(cases) + " cases, " + std::to_string(failures) +
             " failures" + (r.detail.empty() ? "" : "; first: " + r.detail);
  return r;
}

SuiteResult WalkExactSuite() {
  SuiteResult s{"walk-exact", {}};
  for (int k : {4, 9}) {
    const WalkSuiteResult w = WalkFactsExhaustive(10, k);
    s.checks.push_back({"walk facts k=" + std::to_string(k) + " n<=10",
                        w.failures == 0,
                        std::to_string(w.assignments) + " assignments, " +
                            std::to_string(w.failures) + " failures " +
                            w.first_failure});
  }
  {
    int bad = 0;
    std::string first;
    for (int n = 0; n <= 16; ++n) {
      for (int m = 0; m <= n + 2; ++m) {
        const ReflectionCounts c = ReflectionIdentity(n, m);
        if (!c.equal() && bad++ == 0) {
          first = "n=" + std::to_string(n) + " m=" + std::to_string(m);
        }
      }
    }
    s.checks.push_back({"reflection identity n<=16", bad == 0,
                        std::to_string(bad) + " failures " + first});
    const ReflectionCounts spot = ReflectionIdentity(4, 2);
    s.checks.push_back({"reflection n=4 m=2 is 1/16",
                        spot.hit_and_low == 1 && spot.high_end == 1 &&
                            spot.total == 16,
                        Fraction(spot.hit_and_low, spot.total) + " vs " +
                            Fraction(spot.high_end, spot.total)});
  }
  {
    WalkSpec spec{2, {{0, 1}}, {}};
    const DecorrelationResult d = DecorrelationExperiment(spec, 0);
    s.checks.push_back(
        {"decorrelation n=2 is 1/2 -> 3/4",
         d.correlated.numerator * 2 == d.correlated.denominator &&
             d.decorrelated.numerator * 4 == 3 * d.decorrelated.denominator,
         Fraction(d.correlated.numerator, d.correlated.denominator) + " -> " +
             Fraction(d.decorrelated.numerator, d.decorrelated.denominator)});
  }
  {
    long long walks = 0;
    int bad = 0;
    std::string first;
    auto record = [&](bool ok, const std::string& what) {
      ++walks;
      if (!ok && bad++ == 0) first = what;
    };
    for (int n = 2; n <= 8; ++n) {
      std::vector<std::pair<int, int>> pairs;
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
      }
      for (const auto& p : pairs) {
        const WalkSpec one{n, {p}, {}};
        const std::string tag = "n=" + std::to_string(n) + " pair (" +
                                std::to_string(p.first) + "," +
                                std::to_string(p.second) + ")";
        record(DecorrelationExperiment(one, 0).monotone(), tag);
        for (int m = 0; m <= n; ++m) {
          record(DeletionExperiment(one, m).monotone(),
                 tag + " deletion m=" + std::to_string(m));
        }
        for (const auto& q : pairs) {
          if (q <= p || q.first == p.first || q.first == p.second ||
              q.second == p.first || q.second == p.second) {
            continue;
          }
          const WalkSpec two{n, {p, q}, {}};
          record(DecorrelationExperiment(two, 0).monotone(), tag + " +q, 0");
          record(DecorrelationExperiment(two, 1).monotone(), tag + " +q, 1");
          for (int m = 0; m <= n; ++m) {
            record(DeletionExperiment(two, m).monotone(),
                   tag + " +q deletion m=" + std::to_string(m));
          }
        }
      }
    }
    s.checks.push_back({"decorrelation and deletion monotone n<=8", bad == 0,
                        std::to_string(walks) + " walk specs, " +
                            std::to_string(bad) + " failures " + first});
  }
  return s;
}

SuiteResult WorstOrderSuite(uint64_t seed) {
  SuiteResult s{"worst-order", {}};
  RandomStream rng(seed, 0x6f72);
  const WorstOrderReport r = WorstOrderCheck(200, 7, rng);
  s.checks.push_back({"increasing order minimizes rehearsal reward, n<=7",
                      r.failures == 0,
                      std::to_string(r.instances) + " instances, " +
                          std::to_string(r.orders) + " orders, " +
                          std::to_string(r.failures) + " failures " +
                          r.first_failure});
  return s;
}

SuiteResult SecretaryExhaustiveSuite(uint64_t seed) {
  SuiteResult s{"secretary-exhaustive", {}};
  RandomStream rng(seed, 0x7365);
  {
    // Rank-1 with a fair-coin sample: for every order of the non-sample
    // elements the maximum is picked in at least 1/4 of the splits.
    int bad = 0;
    std::string first;
    for (int n = 1; n <= 6; ++n) {
      std::vector<double> w(n);
      for (double& x : w) x = rng.Uniform01();
      const int best = static_cast<int>(
          std::max_element(w.begin(), w.end()) - w.begin());
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        int hits = 0;
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
          std::vector<double> sample;
          std::vector<Arrival> online;
          for (int e : perm) {
            if (mask >> e & 1) {
              sample.push_back(w[e]);
            } else {
              online.push_back({e, w[e]});
            }
          }
          const auto pick = Rank1Secretary(sample, online);
          if (pick && *pick == best) ++hits;
        }
        if (4 * hits < (1 << n) && bad++ == 0) {
          first = "n=" + std::to_string(n) + " hits " + Fraction(hits, 1 << n);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    s.checks.push_back({"rank-1 picks the maximum w.p. >= 1/4, every order",
                        bad == 0, std::to_string(bad) + " failures " + first});
  }
  {
    int bad = 0, elements = 0;
    std::string first;
    double worst = 1.0;
    for (int i = 0; i < 40; ++i) {
      const EnvKind kind = kMatroidKinds[i % std::size(kMatroidKinds)];
      const Environment env = RandomEnvironment(kind, RandomInt(rng, 1, 10), rng);
      std::vector<double> w(env.size());
      for (double& x : w) x = rng.Uniform01();
      for (const auto& f : FreeOrderBasisFrequenciesExact(env, w)) {
        ++elements;
        worst = std::min(worst, f.frequency);
        if (f.frequency < 0.25 && bad++ == 0) {
          first = std::string(EnvKindName(kind)) + " element " +
                  std::to_string(f.element) + " " + std::to_string(f.frequency);
        }
      }
    }
    s.checks.push_back({"free-order basis elements accepted w.p. >= 1/4",
                        bad == 0,
                        std::to_string(elements) + " elements, min frequency " +
                            std::to_string(worst) + " " + first});
  }
  {
    // Reduction: every forced sample permutation and phase size.
    long long runs = 0;
    int bad = 0;
    std::string first;
    for (const EnvKind kind : kMatroidKinds) {
      const Environment env = RandomEnvironment(kind, 5, rng);
      std::vector<double> sv(env.size()), v(env.size());
      for (double& x : sv) x = rng.Uniform01();
      for (double& x : v) x = rng.Uniform01();
      std::vector<Arrival> online;
      for (int e : rng.Permutation(env.size())) online.push_back({e, v[e]});
      for (const auto& name : CompatibleAlgorithms(kind)) {
        if (name == "rehearsal" || name == "greedy") continue;
        const auto alg = MakeSecretaryAlgorithm(name);
        std::vector<int> perm(env.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (int k = 0; k <= env.size(); ++k) {
            ReductionOptions opts;
            opts.permutation = perm;
            opts.sample_phase_size = k;
            RandomStream r(seed, static_cast<uint64_t>(runs));
            const ReductionResult res =
                ReduceSecretaryToProphet(env, *alg, sv, online, r, opts);
            ++runs;
            bool ok = IsFeasible(env, res.accepted);
            for (int j = 0; j < k; ++j) {
              ok = ok && !std::binary_search(res.accepted.begin(),
                                             res.accepted.end(), perm[j]);
              ok = ok && res.consumed[perm[j]];
            }
            const int consumed = static_cast<int>(
                std::count(res.consumed.begin(), res.consumed.end(), 1));
            ok = ok && consumed == k;
            if (!ok && bad++ == 0) {
              first = std::string(EnvKindName(kind)) + " " + name +
                      " k=" + std::to_string(k);
            }
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
    s.checks.push_back({"reduction feasible, sample phase ignored, n=5",
                        bad == 0,
                        std::to_string(runs) + " runs, " + std::to_string(bad) +
                            " failures " + first});
  }
  return s;
}

SuiteResult MechIrSuite(uint64_t seed, double scale) {
  SuiteResult s{"mech-ir", {}};
  const int cases = Scaled(10000, scale);
  s.checks.push_back(ForScenarios(
      "individual rationality", cases, seed, true,
      [](const Scenario& sc, RandomStream&) -> std::string {
        std::string why;
        const MechanismOutcome o = RunScenario(sc, sc.v, sc.policy);
        return CheckOutcome(sc.env, o, sc.v, &why) ? "" : why;
      }));
  s.checks.push_back(ForScenarios(
      "revenue equals sum of thresholds", cases, seed + 1, false,
      [](const Scenario& sc, RandomStream&) -> std::string {
        const MechanismOutcome o = RunScenario(sc, sc.v, {});
        double thresholds = 0.0;
        for (const Decision& d : RunDecisions(sc, sc.order)) {
          thresholds += ThresholdPayment(d.accepted, d.price);
        }
        return std::abs(thresholds - o.revenue) <= kTol * (1 + o.revenue)
                   ? ""
                   : "revenue " + std::to_string(o.revenue) + " vs " +
                         std::to_string(thresholds);
      }));
  s.checks.push_back(ForScenarios(
      "lazy and eager zero reserves coincide", cases, seed + 2, false,
      [](const Scenario& sc, RandomStream&) -> std::string {
        for (const auto& m : sc.dist.marginals()) {
          if (m.SupportMin() != 0.0) return "";
        }
        ReservePolicy lazy{ReserveKind::kQuantile, ReserveApplication::kLazy, 0.0};
        ReservePolicy eager = lazy;
        eager.application = ReserveApplication::kEager;
        const MechanismOutcome a = RunScenario(sc, sc.v, lazy);
        const MechanismOutcome b = RunScenario(sc, sc.v, eager);
        return a.winners == b.winners && a.payments == b.payments
                   ? ""
                   : "outcomes differ";
      }));
  s.checks.push_back(ForScenarios(
      "lazy reserves never raise welfare", cases, seed + 3, true,
      [](const Scenario& sc, RandomStream&) -> std::string {
        ReservePolicy lazy = sc.policy;
        lazy.application = ReserveApplication::kLazy;
        const MechanismOutcome with = RunScenario(sc, sc.v, lazy);
        const MechanismOutcome without = RunScenario(sc, sc.v, {});
        return with.welfare <= without.welfare + kTol ? "" : "welfare rose";
      }));
  s.checks.push_back(ForScenarios(
      "unilateral deviations never pay", cases, seed + 4, true,
      [](const Scenario& sc, RandomStream& rng) -> std::string {
        const int e = static_cast<int>(rng.UniformInt(sc.env.size()));
        const double top = *std::max_element(sc.v.begin(), sc.v.end());
        WeightVector b = sc.v;
        b[e] = 2.0 * (top + 1.0) * rng.Uniform01();
        const double truthful = Utility(RunScenario(sc, sc.v, sc.policy), e, sc.v[e]);
        const double deviant = Utility(RunScenario(sc, b, sc.policy), e, sc.v[e]);
        return deviant <= truthful + kTol
                   ? ""
                   : "bid " + std::to_string(b[e]) + " gains " +
                         std::to_string(deviant - truthful);
      }));
  {
    // Free-order mechanism deviations.
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
      RandomStream rng(seed + 5, static_cast<uint64_t>(c));
      const EnvKind kind = kMatroidKinds[rng.UniformInt(std::size(kMatroidKinds))];
      const Environment env = RandomEnvironment(kind, RandomInt(rng, 1, 10), rng);
      const auto dist = ProductDistribution::Iid(Marginal::Uniform(0, 1), env.size());
      const WeightVector sv = dist.Sample(rng), v = dist.Sample(rng);
      ReservePolicy p = RandomPolicy(dist, rng);
      p.application = ReserveApplication::kLazy;
      const RandomStream base = rng.Fork(3);
      const int e = static_cast<int>(rng.UniformInt(env.size()));
      WeightVector b = v;
      b[e] = 2.0 * rng.Uniform01();
      RandomStream r1 = base, r2 = base;
      const MechanismOutcome t = SpmFreeOrder(env, sv, v, p, dist, r1);
      const MechanismOutcome d = SpmFreeOrder(env, sv, b, p, dist, r2);
      std::string why;
      if (!CheckOutcome(env, t, v, &why) ||
          Utility(d, e, v[e]) > Utility(t, e, v[e]) + kTol) {
        ++bad;
      }
    }
    s.checks.push_back({"free-order mechanism IR and deviations", bad == 0,
                        std::to_string(cases) + " cases, " +
                            std::to_string(bad) + " failures"});
  }
  {
    // One bidder, U(0,1), price = an independent sample: E[s(1-s)] = 1/6.
    const int trials = Scaled(100000, scale);
    RandomStream rng(seed, 0x73616d);
    const Environment env = Environment::Uniform(1, 1);
    const auto dist = ProductDistribution::Iid(Marginal::Uniform(0, 1), 1);
    const GreedyAlgorithm greedy;
    const ReservePolicy p{ReserveKind::kSingleSample, ReserveApplication::kLazy};
    double sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::vector<WeightVector> samples = {dist.Sample(rng)};
      const WeightVector v = dist.Sample(rng);
      const int order[] = {0};
      sum += RunPostedPriceMechanism(env, greedy, samples, order, v, p, dist, rng)
                 .revenue;
    }
    const double mean = sum / trials;
    s.checks.push_back({"single-sample reserve revenue is 1/6",
                        std::abs(mean - 1.0 / 6.0) <= 0.01,
                        "mean " + std::to_string(mean)});
  }
  {
    RandomStream rng(seed, 0x6d79);
    const auto dist = ProductDistribution::Iid(Marginal::Uniform(0, 1), 2);
    const Estimate e =
        MyersonBenchmark(Environment::Uniform(2, 1), dist, Scaled(100000, scale), rng);
    s.checks.push_back({"two-bidder benchmark is 5/12",
                        std::abs(e.mean - 5.0 / 12.0) <= 0.01,
                        "mean " + std::to_string(e.mean)});
  }
  return s;
}

SuiteResult InvariantsSuite(uint64_t seed, double scale) {
  SuiteResult s{"invariants", {}};
  const int cases = Scaled(10000, scale);
  s.checks.push_back(ForScenarios(
      "feasible, each element decided once", cases, seed, false,
      [](const Scenario& sc, RandomStream&) -> std::string {
        const auto decisions = RunDecisions(sc, sc.order);
        if (static_cast<int>(decisions.size()) != sc.env.size()) {
          return "decision count";
        }
        FeasibleSet acc;
        for (const Decision& d : decisions) {
          if (d.accepted) acc.push_back(d.index);
          if (d.accepted && !(d.value > d.price)) return "accepted below price";
          if (d.accepted && d.ignored) return "accepted an ignored element";
          if (!IsFeasible(sc.env, acc)) return "infeasible prefix";
        }
        return "";
      }));
  s.checks.push_back(ForScenarios(
      "prefix replay is irrevocable", cases, seed + 1, false,
      [](const Scenario& sc, RandomStream& rng) -> std::string {
        const auto full = RunDecisions(sc, sc.order);
        const int len = static_cast<int>(rng.UniformInt(sc.order.size() + 1));
        const auto prefix =
            RunDecisions(sc, std::span(sc.order).subspan(0, len));
        for (int i = 0; i < len; ++i) {
          if (prefix[i].accepted != full[i].accepted ||
              prefix[i].price != full[i].price) {
            return "decision " + std::to_string(i) + " changed";
          }
        }
        return "";
      }));
  s.checks.push_back(ForScenarios(
      "raising a winner's value keeps it winning", cases, seed + 2, true,
      [](const Scenario& sc, RandomStream& rng) -> std::string {
        const MechanismOutcome o = RunScenario(sc, sc.v, sc.policy);
        if (o.winners.empty()) return "";
        const int e = o.winners[rng.UniformInt(o.winners.size())];
        WeightVector up = sc.v;
        up[e] += rng.Uniform01() * (1.0 + up[e]);
        return Wins(RunScenario(sc, up, sc.policy), e) ? "" : "lost after raise";
      }));
  {
    // Offline optimum against brute force over all subsets.
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
      RandomStream rng(seed + 3, static_cast<uint64_t>(c));
      const EnvKind kind = kAllKinds[rng.UniformInt(std::size(kAllKinds))];
      const Environment env = RandomEnvironment(kind, RandomInt(rng, 1, 8), rng);
      std::vector<double> w(env.size());
      for (double& x : w) x = rng.Bernoulli(0.2) ? 0.0 : rng.Uniform01();
      const OptResult opt = OfflineOpt(env, w);
      double best = 0.0;
      for (uint32_t mask = 0; mask < (1u << env.size()); ++mask) {
        FeasibleSet set;
        double sum = 0.0;
        for (int e = 0; e < env.size(); ++e) {
          if (mask >> e & 1) {
            set.push_back(e);
            sum += w[e];
          }
        }
        if (sum > best && IsFeasible(env, set)) best = sum;
      }
      if (!IsFeasible(env, opt.set) || std::abs(opt.weight - best) > kTol) ++bad;
    }
    s.checks.push_back({"offline optimum matches brute force", bad == 0,
                        std::to_string(cases) + " cases, " +
                            std::to_string(bad) + " failures"});
  }
  {
    int bad = 0;
    for (int c = 0; c < cases; ++c) {
      RandomStream rng(seed + 4, static_cast<uint64_t>(c));
      const int couples = RandomInt(rng, 1, 10);
      const int k = RandomInt(rng, 1, 16);
      std::vector<int> partner(2 * couples);
      std::vector<int> pos(2 * couples);
      std::iota(pos.begin(), pos.end(), 0);
      rng.Shuffle(pos);
      for (int i = 0; i < couples; ++i) {
        partner[pos[2 * i]] = pos[2 * i + 1];
        partner[pos[2 * i + 1]] = pos[2 * i];
      }
      const FlipAssignment flips = OrientCouples(partner, rng(), k);
      const WalkTrace t = BuildRw(flips);
      const int q = RehearsalDistinctSlots(k);
      int jumps = 0, samples = 0;
      bool ok = t.positions[0] == 0;
      for (size_t j = 0; j < t.steps.size(); ++j) {
        const int d = t.positions[j + 1] - t.positions[j];
        switch (t.steps[j]) {
          case StepKind::kDown: ok = ok && d == -1; break;
          case StepKind::kUp: ok = ok && d == 1; break;
          case StepKind::kFlat: ok = ok && d == 0; break;
          case StepKind::kJump:
            ok = ok && d == k - q + 1;
            ++jumps;
            break;
        }
        if (flips.labels[j] == Label::kSample) ++samples;
      }
      ok = ok && jumps == (samples >= q ? 1 : 0) && WalkFactsCheck(flips).ok;
      if (!ok) ++bad;
    }
    s.checks.push_back({"walk steps and facts on random couples", bad == 0,
                        std::to_string(cases) + " cases, " +
                            std::to_string(bad) + " failures"});
  }
  return s;
}

SuiteResult RatiosSuite(uint64_t seed, double scale) {
  SuiteResult s{"ratios", {}};
  for (const RatioRow& row : RatioTable(Scaled(10000, scale), seed)) {
    std::ostringstream detail;
    detail.precision(4);
    detail << "empirical " << row.empirical << " +- " << 3 * row.stderr_ratio
           << " (3 sigma), claimed " << row.claimed
           << (row.asserted ? "" : ", reported only");
    s.checks.push_back(
        {row.env_class + " / " + row.algorithm, row.passed, detail.str()});
  }
  return s;
}

}  // namespace

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifySuiteNames() {
  return {"walk-exact", "worst-order", "secretary-exhaustive",
          "mech-ir",    "invariants",  "ratios"};
}

SuiteResult RunVerifySuite(std::string_view name, uint64_t seed, double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ConfigError("scale must lie in (0, 1]");
  }
  if (name == "walk-exact") return WalkExactSuite();
  if (name == "worst-order") return WorstOrderSuite(seed);
  if (name == "secretary-exhaustive") return SecretaryExhaustiveSuite(seed);
  if (name == "mech-ir") return MechIrSuite(seed, scale);
  if (name == "invariants") return InvariantsSuite(seed, scale);
  if (name == "ratios") return RatiosSuite(seed, scale);
  throw ConfigError("unknown verify suite '" + std::string(name) + "'");
}

Environment RandomEnvironment(EnvKind kind, int n, RandomStream& rng) {
  if (n < 1) throw InputDomainError("random environment needs n >= 1");
  switch (kind) {
    case EnvKind::kUniform:
      return Environment::Uniform(n, RandomInt(rng, 1, n));
    case EnvKind::kPartition: {
      const int b = RandomInt(rng, 1, n);
      std::vector<std::vector<int>> blocks(b);
      for (int e = 0; e < n; ++e) blocks[rng.UniformInt(b)].push_back(e);
      std::erase_if(blocks, [](const auto& x) { return x.empty(); });
      std::vector<int> caps;
      for (const auto& x : blocks) {
        caps.push_back(RandomInt(rng, 1, static_cast<int>(x.size())));
      }
      return Environment::Partition(n, std::move(blocks), std::move(caps));
    }
    case EnvKind::kLaminar: {
      std::vector<std::vector<int>> family;
      std::vector<int> caps;
      AddLaminarSets(rng.Permutation(n), 0, n, rng, family, caps);
      return Environment::Laminar(n, std::move(family), std::move(caps));
    }
    case EnvKind::kGraphic: {
      const int vertices = std::max(2, n / 2 + 1);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < n; ++i) {
        const int u = RandomInt(rng, 0, vertices - 1);
        int v = RandomInt(rng, 0, vertices - 2);
        if (v >= u) ++v;
        edges.emplace_back(u, v);
      }
      return Environment::Graphic(vertices, std::move(edges));
    }
    case EnvKind::kTransversal: {
      const int right = std::max(1, (2 * n) / 3);
      std::vector<std::pair<int, int>> pairs;
      for (int l = 0; l < n; ++l) {
        std::vector<int> rs(right);
        std::iota(rs.begin(), rs.end(), 0);
        rng.Shuffle(rs);
        const int deg = RandomInt(rng, 1, std::min(right, 3));
        for (int i = 0; i < deg; ++i) pairs.emplace_back(l, rs[i]);
      }
      return Environment::Transversal(
          BipartiteGraph::FromPairs(n, right, pairs));
    }
    case EnvKind::kBipartiteMatching: {
      // Degree at most 3 on both sides.
      const int side = (n + 2) / 3 + 1;
      std::vector<int> ldeg(side, 0), rdeg(side, 0);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i) {
        std::vector<int> ls, rs;
        for (int x = 0; x < side; ++x) {
          if (ldeg[x] < 3) ls.push_back(x);
          if (rdeg[x] < 3) rs.push_back(x);
        }
        const int l = ls[rng.UniformInt(ls.size())];
        const int r = rs[rng.UniformInt(rs.size())];
        ++ldeg[l];
        ++rdeg[r];
        pairs.emplace_back(l, r);
      }
      return Environment::BipartiteMatching(
          BipartiteGraph::FromPairs(side, side, pairs));
    }
  }
  throw InputDomainError("unknown environment kind");
}

std::vector<std::string> CompatibleAlgorithms(EnvKind kind) {
  switch (kind) {
    case EnvKind::kUniform:
      return {"rehearsal", "rank1", "blockwise", "gv", "greedy"};
    case EnvKind::kPartition:
      return {"blockwise", "rank1", "gv", "greedy"};
    case EnvKind::kLaminar:
      return {"blockwise", "rank1", "gv", "greedy"};
    case EnvKind::kGraphic:
      return {"graphic-kp", "rank1", "gv", "greedy"};
    case EnvKind::kTransversal:
      return {"transversal-dp", "rank1", "gv", "greedy"};
    case EnvKind::kBipartiteMatching:
      return {"p-matching", "p-matching-greedy", "p-matching-per-edge",
              "greedy"};
  }
  return {};
}

WorstOrderReport WorstOrderCheck(int instances, int max_n, RandomStream& rng) {
  WorstOrderReport rep;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + i % max_n;
    const int k = RandomInt(rng, 1, n);
    std::vector<double> s(n), v(n);
    for (double& x : s) x = rng.Uniform01();
    for (double& x : v) x = rng.Uniform01();
    const std::vector<double> thresholds = RehearsalThresholds(s, k);
    auto reward = [&](const std::vector<int>& order) {
      std::vector<Arrival> stream;
      for (int e : order) stream.push_back({e, v[e]});
      return RehearsalRun(thresholds, stream).welfare;
    };
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> increasing = perm;
    std::sort(increasing.begin(), increasing.end(),
              [&](int a, int b) { return v[a] < v[b]; });
    const double base = reward(increasing);
    ++rep.instances;
    do {
      ++rep.orders;
      if (reward(perm) < base - kTol) {
        if (rep.failures++ == 0) {
          rep.first_failure = "instance " + std::to_string(i) + " n=" +
                              std::to_string(n) + " k=" + std::to_string(k);
        }
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return rep;
}

std::vector<ElementFrequency> FreeOrderBasisFrequencies(
    const Environment& env, std::span<const double> w, int trials,
    RandomStream& rng) {
  const FeasibleSet basis = OfflineOpt(env, w).set;
  std::vector<int> hits(basis.size(), 0);
  for (int t = 0; t < trials; ++t) {
    const FreeOrderResult r = FreeOrderJsz(env, w, rng);
    for (size_t i = 0; i < basis.size(); ++i) {
      hits[i] += std::binary_search(r.accepted.begin(), r.accepted.end(),
                                    basis[i]);
    }
  }
  std::vector<ElementFrequency> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    const double p = static_cast<double>(hits[i]) / trials;
    out.push_back({basis[i], p, std::sqrt(p * (1 - p) / trials)});
  }
  return out;
}

std::vector<ElementFrequency> FreeOrderBasisFrequenciesExact(
    const Environment& env, std::span<const double> w) {
  const int n = env.size();
  if (n > 20) throw InputDomainError("exact free-order frequencies need n <= 20");
  const FeasibleSet basis = OfflineOpt(env, w).set;
  std::vector<int64_t> hits(basis.size(), 0);
  std::vector<char> in_sample(n);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int e = 0; e < n; ++e) in_sample[e] = mask >> e & 1;
    const FreeOrderResult r = FreeOrderJsz(env, in_sample, w, w);
    for (size_t i = 0; i < basis.size(); ++i) {
      hits[i] += std::binary_search(r.accepted.begin(), r.accepted.end(),
                                    basis[i]);
    }
  }
  std::vector<ElementFrequency> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    out.push_back({basis[i], static_cast<double>(hits[i]) / (1u << n), 0.0});
  }
  return out;
}

std::vector<RatioRow> RatioTable(int trials, uint64_t seed) {
  RandomStream gen(seed, 0x7261);
  struct Instance {
    std::string env_class;
    Environment env;
  };
  std::vector<Instance> instances;
  instances.push_back({"uniform-k", Environment::Uniform(64, 16)});
  {
    std::vector<std::vector<int>> blocks(6);
    for (int e = 0; e < 24; ++e) blocks[e % 6].push_back(e);
    instances.push_back(
        {"partition", Environment::Partition(24, blocks, std::vector<int>(6, 1))});
  }
  instances.push_back({"graphic", RandomEnvironment(EnvKind::kGraphic, 16, gen)});
  instances.push_back(
      {"transversal", RandomEnvironment(EnvKind::kTransversal, 12, gen)});
  instances.push_back(
      {"laminar-approx", RandomEnvironment(EnvKind::kLaminar, 16, gen)});
  instances.push_back({"general-iid", Environment::Uniform(48, 16)});
  instances.push_back(
      {"matching", RandomEnvironment(EnvKind::kBipartiteMatching, 12, gen)});

  std::vector<RatioRow> rows;
  for (const auto& inst : instances) {
    const ProphetBinding b = ProphetFor(inst.env_class);
    ExperimentConfig c;
    c.environment = inst.env;
    c.distribution =
        ProductDistribution::Iid(Marginal::Uniform(0, 1), inst.env.size());
    c.algorithm = b.algorithm;
    c.order.kind = OrderKind::kRandom;
    c.trials = trials;
    c.seed = seed;
    const ExperimentReport r = RunExperiment(c);
    RatioRow row;
    row.env_class = inst.env_class;
    row.algorithm = b.algorithm;
    row.claimed = b.ratio;
    row.empirical = r.welfare.ratio;
    row.stderr_ratio = r.welfare.stderr_ratio;
    row.asserted = !b.approximate && b.ratio > 0.0;
    row.passed =
        !row.asserted || row.empirical >= row.claimed - 3.0 * row.stderr_ratio;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pinq
