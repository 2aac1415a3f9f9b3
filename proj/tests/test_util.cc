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


#include "test_util.h"

#include <cmath>
#include <memory>
#include <utility>

namespace ousm::testing {

SubmodularOracle SingleEdgeOracle() {
  return Normalize(DirectedGraph{2, {{1, 2, 1.0}}});
}

SubmodularOracle SquaredSizeOracle(int n) {
  return SubmodularOracle(
      GroundSet{n},
      [n](Subset s) {
        const double k = s.Size();
        return k * k / (static_cast<double>(n) * n);
      },
      "squared-size");
}

SubmodularOracle RandomCutOracle(int n, std::uint64_t seed, double density) {
  return Normalize(RandomDigraph(n, density, 0.0, 1.0, seed));
}

SubmodularOracle RandomTableOracle(int n, std::uint64_t seed) {
  CoinStream coins(seed);
  auto table = std::make_shared<std::vector<double>>(std::size_t{1} << n);
  for (double& v : *table) v = coins.Uniform();
  return SubmodularOracle(
      GroundSet{n}, [table](Subset s) { return (*table)[s.mask()]; },
      "random-table");
}

BalancePoint RandomTrianglePoint(CoinStream& coins) {
  double a = coins.Uniform();
  double b = coins.Uniform();
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  const double c = 1.0 - a - b;
  return {a * kUp.alpha + b * kRight.alpha + c * kLeft.alpha,
          a * kUp.beta + b * kRight.beta + c * kLeft.beta};
}

}  // namespace ousm::testing
