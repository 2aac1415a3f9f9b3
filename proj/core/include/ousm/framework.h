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

#ifndef OUSM_FRAMEWORK_H_
#define OUSM_FRAMEWORK_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ousm/balance.h"
#include "ousm/rng.h"
#include "ousm/subset.h"
#include "ousm/submodular.h"

namespace ousm {

// alpha = f(X + i) - f(X), beta = f(Y - i) - f(Y). Requires X subset of Y,
// i in Y but not in X, and X, Y equal on the elements below i; otherwise
// throws Error(kContract). Four oracle queries.
BalancePoint MarginalPair(const SubmodularOracle& f, Subset x, Subset y,
                          int i);

// One round of the online framework. Vectors indexed by element i hold its
// data at position i - 1; x_sets/y_sets hold X_0..X_n and Y_0..Y_n.
struct RoundTranscript {
  std::int64_t round = 0;
  Subset chosen;
  double reward = 0.0;  // f(chosen)
  std::vector<Decision> decisions;
  std::vector<BalancePoint> marginals;
  std::vector<Subset> x_sets;
  std::vector<Subset> y_sets;
  std::uint64_t queries = 0;  // oracle queries spent by this round
};

// Plays one round: subroutine i (0-based i - 1) decides element i using
// coins[i - 1], the chosen set X_n is fixed, and only then f is queried for
// the marginals, which are fed back in index order. Values are memoized for
// the duration of the round so at most 3n + 2 distinct sets are queried.
// Throws Error(kConfig) if the number of subroutines or coin streams does
// not match f's ground set.
RoundTranscript RunRound(
    std::span<const std::unique_ptr<BalanceSubroutine>> subroutines,
    const SubmodularOracle& f, std::span<CoinStream> coins,
    std::int64_t round = 1);

inline std::uint64_t RoundQueryBudget(int n) {
  return 4 * static_cast<std::uint64_t>(n) + 2;
}

// n subroutine copies with one coin stream each. Stream i is seeded from
// (coin_seed, i), so the draws seen by subroutine i never depend on the
// seeds of the others.
class OnlineUsm {
 public:
  OnlineUsm(int n, std::int64_t horizon, std::string_view subroutine,
            std::uint64_t coin_seed);
  OnlineUsm(std::vector<std::unique_ptr<BalanceSubroutine>> subroutines,
            std::vector<CoinStream> coins);

  int n() const { return static_cast<int>(subroutines_.size()); }
  std::int64_t rounds_played() const { return rounds_; }
  const BalanceSubroutine& subroutine(int i) const {
    return *subroutines_[i - 1];
  }

  RoundTranscript Play(const SubmodularOracle& f);

 private:
  std::vector<std::unique_ptr<BalanceSubroutine>> subroutines_;
  std::vector<CoinStream> coins_;
  std::int64_t rounds_ = 0;
};

struct HistoryEntry {
  const SubmodularOracle* oracle = nullptr;
  Subset chosen;
};

struct FixedSetValue {
  Subset set;
  double total = 0.0;
};

inline constexpr int kMaxOptEnumeration = 20;

// Best fixed set for the summed function over the history; ties go to the
// smallest mask. Throws Error(kSize) for n > 20.
FixedSetValue BestFixedSet(std::span<const HistoryEntry> history);

// a * sum_t f_t(S*) - sum_t f_t(S_t), with S* = `opt` when given and the
// hindsight optimum otherwise.
double UsmAlphaRegret(std::span<const HistoryEntry> history, double a,
                      std::optional<Subset> opt = std::nullopt);

struct RecordedRound {
  const SubmodularOracle* oracle = nullptr;
  RoundTranscript transcript;
};

struct OptTrackingResult {
  bool pass = true;
  int element = 0;       // first failing step i
  std::string relation;  // which relation failed
  double lhs = 0.0;
  double rhs = 0.0;
};

// Replays a round while moving a copy of `opt` toward the decisions and
// checks, per element i, that f(X_i) - f(X_{i-1}) and f(Y_i) - f(Y_{i-1})
// match the recorded marginal (or zero), and that f(OPT_i) either stays put
// or drops by at most the marginal of the option not taken. Tolerance 1e-9.
// Requires n <= 16.
OptTrackingResult OptTrackingCheck(const RoundTranscript& transcript,
                                   const SubmodularOracle& f, Subset opt);

// For each i, sum over rounds of the X and Y gains at step i minus the sum
// of alpha over yes rounds and beta over no rounds. Zero up to rounding.
std::vector<double> ProgressIdentityResiduals(
    std::span<const RecordedRound> rounds);

struct OptDropRow {
  double drop = 0.0;   // sum_t f(OPT_{i-1}) - f(OPT_i)
  double bound = 0.0;  // max(sum over no of alpha, sum over yes of beta)
};

std::vector<OptDropRow> OptDropRows(std::span<const RecordedRound> rounds,
                                    Subset opt);

// T/16, T/8, T/4, T/2, T, rounded and deduplicated, each >= 1.
std::vector<std::int64_t> RegretCheckpoints(std::int64_t horizon);

// Least-squares slope of log(regret) against log(t). Points with
// nonpositive regret are dropped; NaN if fewer than two remain.
double FitGrowthExponent(std::span<const double> ts,
                         std::span<const double> regrets);

struct UsmRunOptions {
  double alpha = 0.5;
  bool track_opt = true;
  bool keep_transcripts = false;
};

struct UsmRunResult {
  std::vector<double> rewards;
  std::vector<double> cumulative_reward;
  std::vector<double> cumulative_opt;  // NaN when not tracked
  std::vector<double> alpha_regret;    // NaN when not tracked
  std::vector<std::uint64_t> cumulative_queries;
  std::vector<std::uint64_t> round_queries;
  std::uint64_t total_queries = 0;
  double growth_exponent = 0.0;
  std::vector<RecordedRound> transcripts;  // only with keep_transcripts
};

// Supplies f_t given the round index and the previous chosen set. The
// returned oracle must outlive the run result.
using OracleSource = std::function<const SubmodularOracle&(
    std::int64_t round, std::optional<Subset> last_chosen)>;

// Plays `rounds` rounds. With track_opt the hindsight optimum of every prefix
// is maintained exactly by accumulating each oracle's full value table
// (n <= 20); those evaluations are not part of the round query counts.
UsmRunResult RunOnlineUsm(OnlineUsm& algorithm, std::int64_t rounds,
                          const OracleSource& source,
                          const UsmRunOptions& options);

}  // namespace ousm

#endif  // OUSM_FRAMEWORK_H_
