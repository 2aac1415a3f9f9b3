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

#ifndef OUSM_OFFLINE_H_
#define OUSM_OFFLINE_H_

#include <cstdint>

#include "ousm/rng.h"
#include "ousm/subset.h"
#include "ousm/submodular.h"

namespace ousm {

struct OfflineResult {
  Subset chosen;
  double value = 0.0;
  // Filled by the multi-trial randomized run only.
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  std::uint64_t queries = 0;
};

// Exact maximizer over all 2^n subsets, smallest mask on ties. n <= 20.
OfflineResult BruteForceOpt(const SubmodularOracle& f);

// Double greedy, keeping i iff alpha_i >= beta_i. 2n + 2 queries.
OfflineResult DetDoubleGreedy(const SubmodularOracle& f);

// Probability of yes for the randomized double greedy:
// a+ / (a+ + b+), and 1 when both positive parts vanish.
double RandDoubleGreedyProbability(double alpha, double beta);

// One randomized double greedy sweep, one uniform draw per element.
OfflineResult RandDoubleGreedy(const SubmodularOracle& f, CoinStream& coins);

// `trials` independent sweeps; chosen/value report the last sweep.
OfflineResult RandDoubleGreedyTrials(const SubmodularOracle& f,
                                     std::uint64_t trials, std::uint64_t seed);

// Exact expected value of a uniformly random subset. n <= 20.
double UniformRandomValue(const SubmodularOracle& f);

}  // namespace ousm

#endif  // OUSM_OFFLINE_H_
