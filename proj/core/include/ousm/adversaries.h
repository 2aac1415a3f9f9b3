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

#ifndef OUSM_ADVERSARIES_H_
#define OUSM_ADVERSARIES_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ousm/balance.h"
#include "ousm/subset.h"
#include "ousm/submodular.h"

namespace ousm {

// U -> (1, 1), R -> (1, -1), L -> (-1, 1), repeated for `horizon` rounds.
// Throws Error(kConfig) for an empty pattern or any other symbol.
std::vector<BalancePoint> ExtremalPatternSequence(std::string_view pattern,
                                                  std::int64_t horizon);

// Deterministic rules reacting to the previous decision. Both open with
// (1, 1).
//   punish-last:  (-1, 1) after yes, (1, -1) after no.
//   reward-chase: (1, -1) after yes, (-1, 1) after no.
enum class AdaptiveRule { kPunishLast, kRewardChase };

AdaptiveRule ParseAdaptiveRule(std::string_view name);
std::string_view AdaptiveRuleName(AdaptiveRule rule);
inline constexpr AdaptiveRule kAdaptiveRules[] = {AdaptiveRule::kPunishLast,
                                                  AdaptiveRule::kRewardChase};

class BalanceAdversary {
 public:
  enum class Kind { kFixedSequence, kExtremalPattern, kAdaptiveRule };

  // Repeats `points` cyclically. Each must lie in the triangle.
  static BalanceAdversary FixedSequence(std::vector<BalancePoint> points);
  static BalanceAdversary Pattern(std::string_view pattern);
  static BalanceAdversary Adaptive(AdaptiveRule rule);

  // "pattern:<symbols>" or "adaptive:<rule>".
  static BalanceAdversary FromDescriptor(std::string_view descriptor);

  Kind kind() const { return kind_; }
  bool adaptive() const { return kind_ == Kind::kAdaptiveRule; }
  std::string Describe() const;

  // Point for the next round. `last` is the algorithm's decision in the
  // previous round (none before the first round); oblivious kinds ignore it.
  BalancePoint Next(std::optional<Decision> last);

  const std::vector<bool>& history() const { return history_; }

 private:
  BalanceAdversary(Kind kind, std::vector<BalancePoint> points,
                   AdaptiveRule rule, std::string label);

  Kind kind_;
  std::vector<BalancePoint> points_;
  AdaptiveRule rule_;
  std::string label_;
  std::int64_t round_ = 0;
  std::vector<bool> history_;  // decisions observed so far
};

// Next point of an adaptive adversary. Throws Error(kContract) for an
// oblivious one.
BalancePoint AdaptiveBalanceStep(BalanceAdversary& adversary,
                                 std::optional<Decision> last_decision);

// Produces the online USM input sequence. Oracles live as long as the
// adversary and keep their addresses.
//   fixed-function: one oracle every round
//   cycle: a pool repeated in order
//   random-oblivious: a fresh random cut oracle each round, seeded by round
//   adaptive-rule: picks from a pool by the previous chosen set;
//     punish-last takes the oracle with the lowest value on it,
//     reward-chase the highest, ties to the lowest index. Round 1 uses the
//     first oracle.
class UsmAdversary {
 public:
  enum class Kind { kFixedFunction, kCycle, kRandomOblivious, kAdaptiveRule };

  static UsmAdversary FixedFunction(SubmodularOracle f);
  static UsmAdversary Cycle(std::vector<SubmodularOracle> pool);
  static UsmAdversary RandomOblivious(InstanceFamily family,
                                      std::uint64_t seed);
  static UsmAdversary Adaptive(AdaptiveRule rule,
                               std::vector<SubmodularOracle> pool);

  // Descriptor grammar: kind[:arg][,key=value]...
  //   fixed                 one random cut function
  //   cycle:<k>             k random cut functions in rotation (default 4)
  //   mixture:<k>           k random cut functions, one drawn uniformly
  //                         and independently each round (default 4)
  //   random                a fresh random cut function every round
  //   adaptive:<rule>       rule over a pool (pool=<k>, default 4)
  //   graph:<a>[+<b>...]    cut functions of graph files, in rotation
  // Random instances take density=, wmin=, wmax= and are drawn on n
  // vertices from `seed`. Throws Error(kConfig) on bad descriptors.
  static UsmAdversary FromDescriptor(std::string_view descriptor, int n,
                                     std::uint64_t seed);

  Kind kind() const { return kind_; }
  bool adaptive() const { return kind_ == Kind::kAdaptiveRule; }
  int n() const { return n_; }
  std::string Describe() const { return label_; }

  const SubmodularOracle& Next(std::int64_t round,
                               std::optional<Subset> last_chosen);

  const std::deque<SubmodularOracle>& pool() const { return pool_; }

 private:
  UsmAdversary(Kind kind, int n, std::string label);

  Kind kind_;
  int n_;
  std::string label_;
  std::deque<SubmodularOracle> pool_;
  AdaptiveRule rule_ = AdaptiveRule::kPunishLast;
  InstanceFamily family_;
  std::uint64_t seed_ = 0;
};

// The two-step process: X1 ~ Bernoulli(p1), then p2 chosen from X1 and
// X2 ~ Bernoulli(p2).
struct CovarianceRule {
  std::string name;
  double p1 = 0.5;
  std::function<double(bool x1)> p2;
};

// copy, invert, constant, and the Balancer's reaction (T = 16) to the
// punish-last and reward-chase adversaries.
std::vector<CovarianceRule> BuiltinCovarianceRules();

// Sample covariance of X1 - p1 and X2 - p2 over `samples` independent
// episodes. Throws Error(kConfig) for fewer than 1000 samples or a rule
// leaving [0, 1].
double CovarianceEstimate(const CovarianceRule& rule, std::uint64_t samples,
                          std::uint64_t seed);

}  // namespace ousm

#endif  // OUSM_ADVERSARIES_H_
