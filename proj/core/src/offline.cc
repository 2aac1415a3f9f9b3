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

#include "ousm/offline.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ousm/errors.h"
#include "ousm/framework.h"

namespace ousm {
namespace {

void RequireEnumerable(const SubmodularOracle& f, const char* what) {
  if (f.n() > kMaxOptEnumeration) {
    throw Error(ErrorKind::kSize, std::string(what) +
                                      " enumerates 2^n sets; needs n <= 20 "
                                      "(got " +
                                      std::to_string(f.n()) + ")");
  }
}

// Shared X/Y sweep. `keep` decides element i from its marginals.
template <typename Keep>
OfflineResult Sweep(const SubmodularOracle& f, Keep keep) {
  const std::uint64_t start = f.queries();
  Subset x = Subset::Empty();
  Subset y = Subset::Full(f.n());
  double fx = f.Evaluate(x);
  double fy = f.Evaluate(y);
  for (int i = 1; i <= f.n(); ++i) {
    const double fx_plus = f.Evaluate(x.With(i));
    const double fy_minus = f.Evaluate(y.Without(i));
    if (keep(fx_plus - fx, fy_minus - fy)) {
      x = x.With(i);
      fx = fx_plus;
    } else {
      y = y.Without(i);
      fy = fy_minus;
    }
  }
  OfflineResult r;
  r.chosen = x;
  r.value = fx;
  r.queries = f.queries() - start;
  return r;
}

}  // namespace

OfflineResult BruteForceOpt(const SubmodularOracle& f) {
  RequireEnumerable(f, "brute-force optimum");
  const std::uint64_t start = f.queries();
  const std::uint64_t count = std::uint64_t{1} << f.n();
  OfflineResult best;
  best.chosen = Subset(0);
  best.value = f.Evaluate(best.chosen);
  for (std::uint64_t m = 1; m < count; ++m) {
    const double v = f.Evaluate(Subset(m));
    if (v > best.value) {
      best.chosen = Subset(m);
      best.value = v;
    }
  }
  best.queries = f.queries() - start;
  return best;
}

OfflineResult DetDoubleGreedy(const SubmodularOracle& f) {
  return Sweep(f, [](double alpha, double beta) { return alpha >= beta; });
}

double RandDoubleGreedyProbability(double alpha, double beta) {
  const double a = std::max(alpha, 0.0);
  const double b = std::max(beta, 0.0);
  if (a + b == 0.0) return 1.0;
  return a / (a + b);
}

OfflineResult RandDoubleGreedy(const SubmodularOracle& f, CoinStream& coins) {
  return Sweep(f, [&coins](double alpha, double beta) {
    return coins.Uniform() < RandDoubleGreedyProbability(alpha, beta);
  });
}

OfflineResult RandDoubleGreedyTrials(const SubmodularOracle& f,
                                     std::uint64_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorKind::kConfig, "trials must be positive");
  CoinStream coins(seed);
  OfflineResult out;
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t k = 1; k <= trials; ++k) {
    const OfflineResult r = RandDoubleGreedy(f, coins);
    // Welford update.
    const double delta = r.value - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (r.value - mean);
    out.chosen = r.chosen;
    out.value = r.value;
    out.queries += r.queries;
  }
  out.trials = trials;
  out.mean = mean;
  out.stddev = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1))
                          : 0.0;
  return out;
}

double UniformRandomValue(const SubmodularOracle& f) {
  RequireEnumerable(f, "uniform random expectation");
  const std::uint64_t count = std::uint64_t{1} << f.n();
  double total = 0.0;
  for (std::uint64_t m = 0; m < count; ++m) total += f.Evaluate(Subset(m));
  return total / static_cast<double>(count);
}

}  // namespace ousm
