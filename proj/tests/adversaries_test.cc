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


#include "ousm/adversaries.h"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ousm/balance.h"
#include "ousm/errors.h"
#include "ousm/rng.h"
#include "ousm/submodular.h"
#include "test_util.h"

namespace ousm {
namespace {

using ::ousm::testing::RandomCutOracle;

bool Same(BalancePoint a, BalancePoint b) {
  return a.alpha == b.alpha && a.beta == b.beta;
}

TEST(PatternTest, Constant) {
  const std::vector<BalancePoint> seq = ExtremalPatternSequence("U", 3);
  ASSERT_EQ(seq.size(), 3u);
  for (const BalancePoint& pt : seq) EXPECT_TRUE(Same(pt, kUp));
}

TEST(PatternTest, Cycles) {
  const std::vector<BalancePoint> seq = ExtremalPatternSequence("RL", 4);
  ASSERT_EQ(seq.size(), 4u);
  EXPECT_TRUE(Same(seq[0], kRight));
  EXPECT_TRUE(Same(seq[1], kLeft));
  EXPECT_TRUE(Same(seq[2], kRight));
  EXPECT_TRUE(Same(seq[3], kLeft));
}

TEST(PatternTest, LedgerAgainstAlwaysYes) {
  Ledger ledger;
  for (const BalancePoint& pt : ExtremalPatternSequence("URL", 3)) {
    ledger = LedgerUpdate(ledger, {true, 1.0}, pt);
  }
  EXPECT_DOUBLE_EQ(ledger.c_no, 1.0);
  EXPECT_DOUBLE_EQ(ledger.c_yes, 0.0);
}

TEST(PatternTest, RejectsBadPatterns) {
  for (const char* pattern : {"", "UX", "u"}) {
    try {
      ExtremalPatternSequence(pattern, 3);
      FAIL() << "accepted '" << pattern << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    }
  }
}

TEST(AdaptiveTest, PunishLast) {
  BalanceAdversary adv = BalanceAdversary::Adaptive(AdaptiveRule::kPunishLast);
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, std::nullopt), kUp));
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, Decision{true, 0.5}), kLeft));
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, Decision{false, 0.5}), kRight));
  EXPECT_EQ(adv.history(), (std::vector<bool>{true, false}));
}

TEST(AdaptiveTest, RewardChase) {
  BalanceAdversary adv =
      BalanceAdversary::Adaptive(AdaptiveRule::kRewardChase);
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, std::nullopt), kUp));
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, Decision{false, 0.5}), kLeft));
  EXPECT_TRUE(Same(AdaptiveBalanceStep(adv, Decision{true, 0.5}), kRight));
}

TEST(AdaptiveTest, ObliviousAdversaryRefusesAdaptiveStep) {
  BalanceAdversary adv = BalanceAdversary::Pattern("U");
  try {
    AdaptiveBalanceStep(adv, std::nullopt);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kContract);
  }
}

TEST(AdaptiveTest, RuleNames) {
  for (AdaptiveRule rule : kAdaptiveRules) {
    EXPECT_EQ(ParseAdaptiveRule(AdaptiveRuleName(rule)), rule);
  }
  EXPECT_THROW(ParseAdaptiveRule("random"), Error);
}

TEST(BalanceAdversaryTest, Descriptors) {
  BalanceAdversary pattern = BalanceAdversary::FromDescriptor("pattern:UR");
  EXPECT_FALSE(pattern.adaptive());
  EXPECT_TRUE(Same(pattern.Next(std::nullopt), kUp));
  EXPECT_TRUE(Same(pattern.Next(Decision{true, 1.0}), kRight));
  EXPECT_TRUE(Same(pattern.Next(Decision{true, 1.0}), kUp));
  BalanceAdversary adaptive =
      BalanceAdversary::FromDescriptor("adaptive:reward-chase");
  EXPECT_TRUE(adaptive.adaptive());
  for (const char* bad : {"pattern", "adaptive:greedy", "walk:U", ""}) {
    EXPECT_THROW(BalanceAdversary::FromDescriptor(bad), Error) << bad;
  }
}

TEST(BalanceAdversaryTest, FixedSequenceRejectsOutsidePoints) {
  EXPECT_THROW(BalanceAdversary::FixedSequence({{0.9, -0.95}}), Error);
  BalanceAdversary adv =
      BalanceAdversary::FixedSequence({{0.5, 0.25}, {-0.5, 0.5}});
  EXPECT_TRUE(Same(adv.Next(std::nullopt), {0.5, 0.25}));
  EXPECT_TRUE(Same(adv.Next(std::nullopt), {-0.5, 0.5}));
  EXPECT_TRUE(Same(adv.Next(std::nullopt), {0.5, 0.25}));
}

TEST(BalanceAdversaryTest, EveryPointInTriangle) {
  CoinStream coins(1);
  for (const char* d : {"pattern:U", "pattern:URL", "pattern:LLRU",
                        "adaptive:punish-last", "adaptive:reward-chase"}) {
    BalanceAdversary adv = BalanceAdversary::FromDescriptor(d);
    std::optional<Decision> last;
    for (int t = 0; t < 1000; ++t) {
      const BalancePoint pt = adv.Next(last);
      ASSERT_TRUE(InTriangle(pt, 0.0)) << d;
      last = Decision{coins.Bernoulli(0.5), 0.5};
    }
  }
}

TEST(BalanceAdversaryTest, ObliviousIgnoresDecisions) {
  BalanceAdversary a = BalanceAdversary::FromDescriptor("pattern:URLLU");
  BalanceAdversary b = BalanceAdversary::FromDescriptor("pattern:URLLU");
  CoinStream ca(1), cb(2);
  for (int t = 0; t < 100; ++t) {
    ASSERT_TRUE(Same(a.Next(Decision{ca.Bernoulli(0.5), 0.5}),
                     b.Next(Decision{cb.Bernoulli(0.5), 0.5})));
  }
}

TEST(UsmAdversaryTest, CycleRotates) {
  std::vector<SubmodularOracle> pool;
  for (int k = 0; k < 3; ++k) pool.push_back(RandomCutOracle(5, k));
  UsmAdversary adv = UsmAdversary::Cycle(pool);
  for (std::int64_t t = 1; t <= 9; ++t) {
    EXPECT_EQ(Tabulate(adv.Next(t, std::nullopt)),
              Tabulate(pool[(t - 1) % 3]));
  }
}

TEST(UsmAdversaryTest, DescriptorKinds) {
  EXPECT_EQ(UsmAdversary::FromDescriptor("fixed", 6, 1).kind(),
            UsmAdversary::Kind::kFixedFunction);
  const UsmAdversary cycle = UsmAdversary::FromDescriptor("cycle:5", 6, 1);
  EXPECT_EQ(cycle.kind(), UsmAdversary::Kind::kCycle);
  EXPECT_EQ(cycle.pool().size(), 5u);
  EXPECT_EQ(UsmAdversary::FromDescriptor("cycle", 6, 1).pool().size(), 4u);
  EXPECT_EQ(UsmAdversary::FromDescriptor("random,density=0.3", 6, 1).kind(),
            UsmAdversary::Kind::kRandomOblivious);
  EXPECT_EQ(UsmAdversary::FromDescriptor("mixture:3", 6, 1).kind(),
            UsmAdversary::Kind::kRandomOblivious);
  const UsmAdversary adaptive =
      UsmAdversary::FromDescriptor("adaptive:punish-last,pool=3", 6, 1);
  EXPECT_TRUE(adaptive.adaptive());
  EXPECT_EQ(adaptive.pool().size(), 3u);
  for (const char* bad : {"cycle:0", "cycle:x", "fixed:2", "random:1",
                          "adaptive:nope", "cycle,color=red", "teleport",
                          "cycle,density=2", "graph:"}) {
    try {
      UsmAdversary::FromDescriptor(bad, 6, 1);
      FAIL() << "accepted " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kConfig) << bad;
    }
  }
}

TEST(UsmAdversaryTest, EmittedOraclesAreSubmodular) {
  for (const char* d : {"fixed", "cycle:3", "random", "mixture:2",
                        "adaptive:reward-chase"}) {
    UsmAdversary adv = UsmAdversary::FromDescriptor(d, 7, 3);
    std::optional<Subset> last;
    for (std::int64_t t = 1; t <= 6; ++t) {
      const SubmodularOracle& f = adv.Next(t, last);
      ASSERT_EQ(f.n(), 7);
      ASSERT_TRUE(VerifySubmodularity(f).pass) << d;
      last = Subset(static_cast<std::uint64_t>(t * 37) & 0x7f);
    }
  }
}

TEST(UsmAdversaryTest, ObliviousKindsIgnoreChoices) {
  for (const char* d : {"cycle:3", "random", "mixture:4"}) {
    UsmAdversary a = UsmAdversary::FromDescriptor(d, 6, 9);
    UsmAdversary b = UsmAdversary::FromDescriptor(d, 6, 9);
    for (std::int64_t t = 1; t <= 20; ++t) {
      ASSERT_EQ(Tabulate(a.Next(t, Subset(t))),
                Tabulate(b.Next(t, Subset::Full(6))))
          << d;
    }
  }
}

TEST(UsmAdversaryTest, PunishLastPicksWorstForLastChoice) {
  UsmAdversary adv = UsmAdversary::FromDescriptor("adaptive:punish-last", 6, 4);
  const Subset last = Subset::Of({1, 4});
  const SubmodularOracle& f = adv.Next(2, last);
  for (const SubmodularOracle& g : adv.pool()) {
    EXPECT_LE(f.Evaluate(last), g.Evaluate(last));
  }
  UsmAdversary chase =
      UsmAdversary::FromDescriptor("adaptive:reward-chase", 6, 4);
  const SubmodularOracle& h = chase.Next(2, last);
  for (const SubmodularOracle& g : chase.pool()) {
    EXPECT_GE(h.Evaluate(last), g.Evaluate(last));
  }
}

TEST(CovarianceTest, CopyRuleIsUncorrelated) {
  const CovarianceRule copy{"copy", 0.5, [](bool x1) { return x1 ? 1.0 : 0.0; }};
  const std::uint64_t samples = 100000;
  EXPECT_LE(std::abs(CovarianceEstimate(copy, samples, 1)),
            4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST(CovarianceTest, ConstantRuleIsUncorrelated) {
  const CovarianceRule constant{"constant", 0.5, [](bool) { return 0.3; }};
  const std::uint64_t samples = 100000;
  EXPECT_LE(std::abs(CovarianceEstimate(constant, samples, 2)),
            4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST(CovarianceTest, DegenerateFirstCoin) {
  const CovarianceRule rule{"degenerate", 0.0,
                            [](bool x1) { return x1 ? 0.9 : 0.1; }};
  EXPECT_EQ(CovarianceEstimate(rule, 5000, 3), 0.0);
}

TEST(CovarianceTest, BuiltinRules) {
  const std::vector<CovarianceRule> rules = BuiltinCovarianceRules();
  EXPECT_GE(rules.size(), 3u);
  for (const CovarianceRule& rule : rules) {
    EXPECT_GE(rule.p1, 0.0);
    EXPECT_LE(rule.p1, 1.0);
    for (bool x1 : {false, true}) {
      EXPECT_GE(rule.p2(x1), 0.0);
      EXPECT_LE(rule.p2(x1), 1.0);
    }
    EXPECT_LE(std::abs(CovarianceEstimate(rule, 100000, 4)),
              4.0 / std::sqrt(100000.0))
        << rule.name;
  }
}

TEST(CovarianceTest, DetectsGenuineCorrelation) {
  // Without subtracting p2 the outcomes are strongly correlated; the
  // estimator must see through that only because it centers on p2.
  const CovarianceRule rule{"copy", 0.5, [](bool x1) { return x1 ? 1.0 : 0.0; }};
  CoinStream coins(5);
  double sum_ab = 0.0, sum_a = 0.0, sum_b = 0.0;
  const int samples = 100000;
  for (int k = 0; k < samples; ++k) {
    const bool x1 = coins.Uniform() < rule.p1;
    const bool x2 = coins.Uniform() < rule.p2(x1);
    const double a = x1 - rule.p1;
    const double b = x2 - 0.5;
    sum_ab += a * b;
    sum_a += a;
    sum_b += b;
  }
  const double raw = sum_ab / samples - (sum_a / samples) * (sum_b / samples);
  EXPECT_GT(raw, 0.2);
  EXPECT_LE(std::abs(CovarianceEstimate(rule, samples, 5)), 0.02);
}

TEST(CovarianceTest, RefusesTinySamples) {
  try {
    CovarianceEstimate(BuiltinCovarianceRules().front(), 999, 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

}  // namespace
}  // namespace ousm
