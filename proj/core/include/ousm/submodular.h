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

#ifndef OUSM_SUBMODULAR_H_
#define OUSM_SUBMODULAR_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ousm/subset.h"

namespace ousm {

// Absolute tolerance for submodularity and range checks.
inline constexpr double kTolerance = 1e-9;

struct GroundSet {
  int n = 1;
};

struct Edge {
  int source = 0;
  int target = 0;
  double weight = 0.0;
};

struct DirectedGraph {
  int n = 0;
  std::vector<Edge> edges;

  double TotalWeight() const;

  // Throws Error(kInvalidInstance) when an edge has an endpoint outside
  // 1..n, is a self loop, or carries a negative weight.
  void Validate() const;
};

// Sum of weight(u -> v) over edges with u in s and v outside s.
double DirectedCutValue(const DirectedGraph& g, Subset s);

// Value-query access to a set function over {1..n}. Every call to Evaluate
// is counted; nothing is memoized here. Copies share the underlying function
// and start from the source's current count.
class SubmodularOracle {
 public:
  using Function = std::function<double(Subset)>;

  SubmodularOracle(GroundSet ground, Function fn, std::string name = "");

  SubmodularOracle(const SubmodularOracle& other);
  SubmodularOracle& operator=(const SubmodularOracle& other);

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }
  const std::string& name() const { return name_; }

  // f(s). Throws Error(kInvalidSubset) if s has elements beyond n. Safe to
  // call concurrently.
  double Evaluate(Subset s) const;

  std::uint64_t queries() const {
    return queries_.load(std::memory_order_relaxed);
  }
  void ResetQueries() { queries_.store(0, std::memory_order_relaxed); }

 private:
  GroundSet ground_;
  std::shared_ptr<const Function> fn_;
  std::string name_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// Oracle for DirectedCutValue(g, s) / W with W the total edge weight
// (W = 1 for a weightless graph).
SubmodularOracle Normalize(const DirectedGraph& g);

SubmodularOracle MakeConstantOracle(int n, double value);

// f(S) = sum of weights[i - 1] over i in S.
SubmodularOracle MakeModularOracle(std::vector<double> weights);

// All 2^n values of f in mask order, obtained through Evaluate. n <= 30.
std::vector<double> Tabulate(const SubmodularOracle& f);

struct SubmodularityWitness {
  Subset larger;   // S
  Subset smaller;  // T, a subset of S
  int element = 0;  // i, not in S
  // f(S + i) - f(S) and f(T + i) - f(T).
  double marginal_larger = 0.0;
  double marginal_smaller = 0.0;
};

struct SubmodularityReport {
  bool pass = true;
  std::optional<SubmodularityWitness> witness;
  std::uint64_t triples_checked = 0;
};

struct VerifyOptions {
  enum class Mode { kExhaustive, kSampled };
  Mode mode = Mode::kExhaustive;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxExhaustiveVerify = 16;

// Checks f(S + i) - f(S) <= f(T + i) - f(T) + 1e-9 for T subset of S and i
// not in S. Exhaustive mode visits S in increasing mask order, then T over
// the submasks of S in increasing order, then i ascending, and reports the
// first failure. Exhaustive mode refuses n > 16 with Error(kSize); sampled
// mode draws random triples and works for any n.
SubmodularityReport VerifySubmodularity(const SubmodularOracle& f,
                                        const VerifyOptions& options = {});

// Describes a family of generated instances. Families:
//   "random-digraph-cut": each ordered pair (u, v), u != v, becomes an edge
//       with probability `density`, weight uniform in [weight_min, weight_max].
//   "cycle-through": the graphs in `graphs`, repeated in order.
//   "mixture": each position drawn uniformly from `components`.
struct InstanceFamily {
  std::string name = "random-digraph-cut";
  int n = 8;
  double density = 0.5;
  double weight_min = 0.0;
  double weight_max = 1.0;
  std::vector<DirectedGraph> graphs;
  std::vector<InstanceFamily> components;
};

DirectedGraph RandomDigraph(int n, double density, double weight_min,
                            double weight_max, std::uint64_t seed);

// `count` normalized cut oracles from `family`, deterministic in `seed`.
// Throws Error(kConfig) for an unknown family or bad parameters.
std::vector<SubmodularOracle> SynthSequence(const InstanceFamily& family,
                                            std::size_t count,
                                            std::uint64_t seed);

// Text format: "digraph <n>" header, then "<source> <target> <weight>" per
// line. Lines starting with '#' and blank lines are ignored.
DirectedGraph ParseGraph(std::istream& in);
DirectedGraph LoadGraph(const std::string& path);
void WriteGraph(std::ostream& out, const DirectedGraph& g);

}  // namespace ousm

#endif  // OUSM_SUBMODULAR_H_
