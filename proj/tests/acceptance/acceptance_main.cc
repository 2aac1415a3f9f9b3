// Copyright 2026 The online-usm Authors.
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


// End-to-end acceptance checks. Prints one PASS or FAIL line per check and
// exits nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ousm/adversaries.h"
#include "ousm/balance.h"
#include "ousm/framework.h"
#include "ousm/harness.h"
#include "ousm/offline.h"
#include "ousm/rng.h"
#include "ousm/submodular.h"
#include "test_util.h"

namespace ousm {
namespace {

constexpr std::uint64_t kMasterSeed = 20260101;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Outcome OfflineLadder() {
  Clock clock;
  Outcome out;
  int det_fail = 0, uniform_fail = 0, rand_fail = 0;
  double worst_det = 1e9, worst_uniform = 1e9, worst_rand = 1e9;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const SubmodularOracle f =
        Normalize(RandomDigraph(10, 0.5, 0.0, 1.0, DeriveSeed(kMasterSeed, k)));
    const double opt = BruteForceOpt(f).value;
    const double det = DetDoubleGreedy(f).value;
    const double uniform = UniformRandomValue(f);
    const OfflineResult rand =
        RandDoubleGreedyTrials(f, 10000, DeriveSeed(kMasterSeed + 1, k));
    const double stderr_mean = rand.stddev / std::sqrt(10000.0);
    det_fail += det < opt / 3.0 - 1e-9;
    uniform_fail += uniform < opt / 4.0 - 1e-9;
    rand_fail += rand.mean < opt / 2.0 - 3.0 * stderr_mean;
    worst_det = std::min(worst_det, det / opt);
    worst_uniform = std::min(worst_uniform, uniform / opt);
    worst_rand = std::min(worst_rand, rand.mean / opt);
  }
  const double secs = clock.Seconds();
  out.pass = det_fail == 0 && uniform_fail == 0 && rand_fail == 0 &&
             secs < 120.0;
  out.detail = Format(
      "50 instances n=10; worst ratios det=%.3f uniform=%.3f rand=%.3f; "
      "failures %d/%d/%d; %.1fs",
      worst_det, worst_uniform, worst_rand, det_fail, uniform_fail, rand_fail,
      secs);
  return out;
}

Outcome BalancerRegret() {
  Clock clock;
  Outcome out;
  double worst_margin = -1e9;
  std::string worst;
  int failures = 0;
  for (const char* adversary :
       {"pattern:U", "pattern:R", "pattern:L", "pattern:RL", "pattern:URL",
        "adaptive:punish-last", "adaptive:reward-chase"}) {
    for (std::int64_t horizon : {1000, 10000}) {
      ExperimentConfig c;
      c.game = Game::kBalance;
      c.rounds = horizon;
      c.trials = 100;
      c.alpha = 1.0;
      c.subroutine = "balancer";
      c.adversary = adversary;
      c.seed = kMasterSeed;
      const ExperimentResult r = RunExperiment(c);
      const double bound = 5.0 * std::sqrt(static_cast<double>(horizon));
      for (double regret : r.summary.final_regret) {
        failures += regret > bound;
        if (regret / bound > worst_margin) {
          worst_margin = regret / bound;
          worst = Format("%s T=%lld", adversary,
                         static_cast<long long>(horizon));
        }
      }
    }
  }
  const double secs = clock.Seconds();
  out.pass = failures == 0 && secs < 60.0;
  out.detail = Format(
      "7 adversaries x T in {1e3,1e4} x 100 seeds; max regret/(5 sqrt T)=%.3f "
      "(%s); failures %d; %.1fs",
      worst_margin, worst.c_str(), failures, secs);
  return out;
}

struct GrowthRun {
  std::vector<double> mean;  // per horizon
  std::uint64_t max_round_queries = 0;
  std::uint64_t budget = 0;
  double seconds = 0.0;
};

ExperimentConfig CycleConfig(const std::string& subroutine, double alpha,
                             std::int64_t horizon) {
  ExperimentConfig c;
  c.game = Game::kUsm;
  c.n = 8;
  c.rounds = horizon;
  c.trials = 50;
  c.alpha = alpha;
  c.subroutine = subroutine;
  c.adversary = "cycle:4";
  c.seed = kMasterSeed;
  return c;
}

constexpr std::int64_t kGrowthHorizons[] = {1000, 4000, 16000};

GrowthRun RunGrowth(const std::string& subroutine, double alpha) {
  Clock clock;
  GrowthRun g;
  for (std::int64_t horizon : kGrowthHorizons) {
    const ExperimentResult r =
        RunExperiment(CycleConfig(subroutine, alpha, horizon));
    g.mean.push_back(r.summary.mean_regret);
    g.max_round_queries =
        std::max(g.max_round_queries, r.summary.max_round_queries);
    g.budget = r.summary.round_query_budget;
  }
  g.seconds = clock.Seconds();
  return g;
}

Outcome GrowthRatio(const GrowthRun& g, const char* label, double limit_secs) {
  Outcome out;
  const double r1 = g.mean[1] / g.mean[0];
  const double r2 = g.mean[2] / g.mean[1];
  out.pass = r1 <= 3.2 && r2 <= 3.2 && g.seconds < limit_secs;
  out.detail = Format(
      "%s mean regret at T=1e3/4e3/1.6e4: %.2f / %.2f / %.2f; ratios %.2f, "
      "%.2f (limit 3.2); %.1fs",
      label, g.mean[0], g.mean[1], g.mean[2], r1, r2, g.seconds);
  if (g.mean[0] < 0.0 || g.mean[1] < 0.0) {
    out.detail +=
        "; regret is negative and grows linearly because the algorithm "
        "collects more than the fraction of the hindsight optimum";
  }
  return out;
}

Outcome PotentialInvariant() {
  constexpr std::int64_t kHorizon = 10000;
  Outcome out;
  int failures = 0;
  int checks = 0;
  double worst_slack = 1e9;
  auto check = [&](double p, const BalancePoint& pt) {
    const StepDeltas d = StepInvariantDeltas(p, pt, kHorizon);
    ++checks;
    if (!d.InvariantHolds(kHorizon)) ++failures;
    worst_slack = std::min(worst_slack, d.d_alg - std::max(d.d_yes, d.d_no) +
                                            2.0 / std::sqrt(static_cast<double>(kHorizon)));
  };
  for (int k = 0; k <= 100; ++k) {
    for (const BalancePoint& pt : {kUp, kRight, kLeft}) check(k / 100.0, pt);
  }
  CoinStream coins(kMasterSeed);
  for (int k = 0; k < 10000; ++k) {
    check(coins.Uniform(), testing::RandomTrianglePoint(coins));
  }
  out.pass = failures == 0;
  out.detail = Format("%d checks at T=1e4; min slack %.3g; failures %d",
                      checks, worst_slack, failures);
  return out;
}

Outcome ProofRelations() {
  Outcome out;
  int runs = 0, rounds = 0, tracking_failures = 0, drop_failures = 0;
  double worst_residual = 0.0;
  std::string first_failure;
  const struct {
    int n;
    const char* adversary;
    const char* subroutine;
  } kRuns[] = {{4, "cycle:4", "balancer"},   {6, "random", "balancer"},
               {8, "cycle:3", "mw"},         {8, "adaptive:punish-last", "balancer"},
               {10, "random", "uniform"},    {10, "mixture:4", "balancer"},
               {12, "cycle:2", "balancer"},  {12, "adaptive:reward-chase", "mw"},
               {5, "fixed", "doubling-balancer"}, {9, "cycle:5", "balancer"}};
  for (const auto& setup : kRuns) {
    ExperimentConfig c;
    c.game = Game::kUsm;
    c.n = setup.n;
    c.rounds = 200;
    c.subroutine = setup.subroutine;
    c.adversary = setup.adversary;
    c.seed = DeriveSeed(kMasterSeed, runs);
    c.keep_transcripts = true;
    const ExperimentResult r = RunExperiment(c);
    const std::vector<RecordedRound>& recorded = r.transcripts.front();
    std::vector<HistoryEntry> history;
    for (const RecordedRound& round : recorded) {
      history.push_back({round.oracle, round.transcript.chosen});
    }
    const Subset opt = BestFixedSet(history).set;
    for (const RecordedRound& round : recorded) {
      ++rounds;
      const OptTrackingResult t =
          OptTrackingCheck(round.transcript, *round.oracle, opt);
      if (!t.pass) {
        ++tracking_failures;
        if (first_failure.empty()) {
          first_failure = Format(" first: n=%d round %lld step %d %s", setup.n,
                                 static_cast<long long>(round.transcript.round),
                                 t.element, t.relation.c_str());
        }
      }
    }
    for (double residual : ProgressIdentityResiduals(recorded)) {
      worst_residual = std::max(worst_residual, std::abs(residual));
    }
    for (const OptDropRow& row : OptDropRows(recorded, opt)) {
      drop_failures += row.drop > row.bound + 1e-9;
    }
    ++runs;
  }
  out.pass = tracking_failures == 0 && worst_residual <= 1e-9 &&
             drop_failures == 0;
  out.detail = Format(
      "%d runs, %d rounds; tracking failures %d; max progress residual %.3g; "
      "drop-bound failures %d%s",
      runs, rounds, tracking_failures, worst_residual, drop_failures,
      first_failure.c_str());
  return out;
}

Outcome Covariance() {
  constexpr std::uint64_t kSamples = 1000000;
  const double bound = 4.0 / std::sqrt(static_cast<double>(kSamples));
  Outcome out;
  std::string parts;
  for (const CovarianceRule& rule : BuiltinCovarianceRules()) {
    const double cov = CovarianceEstimate(rule, kSamples, kMasterSeed);
    out.pass = out.pass && std::abs(cov) <= bound;
    parts += Format(" %s=%.2e", rule.name.c_str(), cov);
  }
  out.detail = Format("N=1e6, bound %.1e;", bound) + parts;
  return out;
}

Outcome QueryBudget(const GrowthRun& balancer, const GrowthRun& mw) {
  Outcome out;
  const std::uint64_t worst =
      std::max(balancer.max_round_queries, mw.max_round_queries);
  out.pass = worst <= balancer.budget && worst <= mw.budget;
  out.detail = Format("max queries in one round %llu, budget %llu",
                      static_cast<unsigned long long>(worst),
                      static_cast<unsigned long long>(balancer.budget));
  return out;
}

Outcome Determinism() {
  Outcome out;
  const ExperimentConfig c = CycleConfig("balancer", 0.5, 1000);
  const std::string a = FormatCsv(RunExperiment(c).rows);
  const std::string b = FormatCsv(RunExperiment(c).rows);
  out.pass = a == b;
  out.detail = Format("two runs, %zu bytes each, %s", a.size(),
                      a == b ? "identical" : "different");
  return out;
}

void Report(const char* name, const Outcome& o, int& failures) {
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

int Main() {
  int failures = 0;
  Report("offline-ladder", OfflineLadder(), failures);
  Report("balancer-regret", BalancerRegret(), failures);
  const GrowthRun balancer = RunGrowth("balancer", 0.5);
  Report("usm-half-regret-growth", GrowthRatio(balancer, "balancer 1/2-regret",
                                               300.0),
         failures);
  const GrowthRun mw = RunGrowth("mw", 1.0 / 3.0);
  Report("usm-third-regret-growth-mw",
         GrowthRatio(mw, "mw 1/3-regret", 300.0), failures);
  Report("potential-invariant", PotentialInvariant(), failures);
  Report("proof-relations", ProofRelations(), failures);
  Report("covariance", Covariance(), failures);
  Report("query-budget", QueryBudget(balancer, mw), failures);
  Report("determinism", Determinism(), failures);
  std::printf("%d of 9 checks failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace ousm

int main() { return ousm::Main(); }
