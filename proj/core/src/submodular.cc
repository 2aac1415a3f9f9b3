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

#include "ousm/submodular.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "ousm/errors.h"
#include "ousm/rng.h"

namespace ousm {

double DirectedGraph::TotalWeight() const {
  double total = 0.0;
  for (const Edge& e : edges) total += e.weight;
  return total;
}

void DirectedGraph::Validate() const {
  if (n < 1 || n > kMaxGroundSize) {
    throw Error(ErrorKind::kInvalidInstance,
                "graph vertex count " + std::to_string(n) +
                    " outside [1, " + std::to_string(kMaxGroundSize) + "]");
  }
  for (const Edge& e : edges) {
    if (e.source < 1 || e.source > n || e.target < 1 || e.target > n) {
      throw Error(ErrorKind::kInvalidInstance,
                  "edge " + std::to_string(e.source) + "->" +
                      std::to_string(e.target) + " has a vertex outside 1.." +
                      std::to_string(n));
    }
    if (e.source == e.target) {
      throw Error(ErrorKind::kInvalidInstance,
                  "self loop at vertex " + std::to_string(e.source));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorKind::kInvalidInstance,
                  "edge " + std::to_string(e.source) + "->" +
                      std::to_string(e.target) + " has invalid weight");
    }
  }
}

double DirectedCutValue(const DirectedGraph& g, Subset s) {
  if (s.MaxElement() > g.n) {
    throw Error(ErrorKind::kInvalidInstance,
                "subset " + s.ToString() + " exceeds graph on " +
                    std::to_string(g.n) + " vertices");
  }
  double value = 0.0;
  for (const Edge& e : g.edges) {
    if (e.source < 1 || e.source > g.n || e.target < 1 || e.target > g.n) {
      throw Error(ErrorKind::kInvalidInstance, "edge vertex out of range");
    }
    if (s.Contains(e.source) && !s.Contains(e.target)) value += e.weight;
  }
  return value;
}

SubmodularOracle::SubmodularOracle(GroundSet ground, Function fn,
                                   std::string name)
    : ground_(ground),
      fn_(std::make_shared<const Function>(std::move(fn))),
      name_(std::move(name)) {
  if (ground_.n < 1 || ground_.n > kMaxGroundSize) {
    throw Error(ErrorKind::kInvalidInstance,
                "ground set size " + std::to_string(ground_.n) +
                    " outside [1, " + std::to_string(kMaxGroundSize) + "]");
  }
}

SubmodularOracle::SubmodularOracle(const SubmodularOracle& other)
    : ground_(other.ground_),
      fn_(other.fn_),
      name_(other.name_),
      queries_(other.queries()) {}

SubmodularOracle& SubmodularOracle::operator=(const SubmodularOracle& other) {
  ground_ = other.ground_;
  fn_ = other.fn_;
  name_ = other.name_;
  queries_.store(other.queries(), std::memory_order_relaxed);
  return *this;
}

double SubmodularOracle::Evaluate(Subset s) const {
  if (s.MaxElement() > ground_.n) {
    throw Error(ErrorKind::kInvalidSubset,
                "subset " + s.ToString() + " not within ground set of size " +
                    std::to_string(ground_.n));
  }
  queries_.fetch_add(1, std::memory_order_relaxed);
  return (*fn_)(s);
}

SubmodularOracle Normalize(const DirectedGraph& g) {
  g.Validate();
  const double total = g.TotalWeight() > 0.0 ? g.TotalWeight() : 1.0;
  struct MaskedEdge {
    std::uint64_t source_bit;
    std::uint64_t target_bit;
    double weight;
  };
  std::vector<MaskedEdge> masked;
  masked.reserve(g.edges.size());
  for (const Edge& e : g.edges) {
    if (e.weight == 0.0) continue;
    masked.push_back({std::uint64_t{1} << (e.source - 1),
                      std::uint64_t{1} << (e.target - 1), e.weight});
  }
  return SubmodularOracle(
      GroundSet{g.n},
      [masked = std::move(masked), total](Subset s) {
        const std::uint64_t m = s.mask();
        double value = 0.0;
        for (const MaskedEdge& e : masked) {
          if ((m & e.source_bit) && !(m & e.target_bit)) value += e.weight;
        }
        // Summing in edge order and dividing once keeps f(S) exactly 1 for a
        // cut containing every edge.
        return value / total;
      },
      "digraph-cut");
}

SubmodularOracle MakeConstantOracle(int n, double value) {
  return SubmodularOracle(
      GroundSet{n}, [value](Subset) { return value; }, "constant");
}

SubmodularOracle MakeModularOracle(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  return SubmodularOracle(
      GroundSet{n},
      [weights = std::move(weights)](Subset s) {
        double value = 0.0;
        for (int e : s.Elements()) value += weights[e - 1];
        return value;
      },
      "modular");
}

std::vector<double> Tabulate(const SubmodularOracle& f) {
  const std::uint64_t count = std::uint64_t{1} << f.n();
  std::vector<double> table(count);
  for (std::uint64_t m = 0; m < count; ++m) table[m] = f.Evaluate(Subset(m));
  return table;
}

namespace {

SubmodularityReport VerifyExhaustive(const SubmodularOracle& f) {
  const int n = f.n();
  const std::vector<double> table = Tabulate(f);
  const std::uint64_t full = Subset::Full(n).mask();
  SubmodularityReport report;
  for (std::uint64_t s = 0; s <= full; ++s) {
    const std::uint64_t outside = full & ~s;
    if (outside == 0) continue;
    // Submasks of s in increasing order: t = (t - s) & s walks them upward.
    std::uint64_t t = 0;
    while (true) {
      for (int i = 1; i <= n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (i - 1);
        if (!(outside & bit)) continue;
        ++report.triples_checked;
        const double gain_s = table[s | bit] - table[s];
        const double gain_t = table[t | bit] - table[t];
        if (gain_s > gain_t + kTolerance) {
          report.pass = false;
          report.witness =
              SubmodularityWitness{Subset(s), Subset(t), i, gain_s, gain_t};
          return report;
        }
      }
      if (t == s) break;
      t = (t - s) & s;
    }
  }
  return report;
}

SubmodularityReport VerifySampled(const SubmodularOracle& f,
                                  const VerifyOptions& options) {
  const int n = f.n();
  const std::uint64_t full = Subset::Full(n).mask();
  CoinStream coins(options.seed);
  SubmodularityReport report;
  for (std::uint64_t k = 0; k < options.samples; ++k) {
    const std::uint64_t s = coins.engine()() & full;
    const std::uint64_t outside = full & ~s;
    if (outside == 0) continue;
    const std::uint64_t t = s & coins.engine()();
    const int choices = std::popcount(outside);
    std::uint64_t pick = coins.Below(static_cast<std::uint64_t>(choices));
    std::uint64_t rest = outside;
    while (pick-- > 0) rest &= rest - 1;
    const int i = std::countr_zero(rest) + 1;
    const Subset bs(s), bt(t);
    const double gain_s = f.Evaluate(bs.With(i)) - f.Evaluate(bs);
    const double gain_t = f.Evaluate(bt.With(i)) - f.Evaluate(bt);
    ++report.triples_checked;
    if (gain_s > gain_t + kTolerance) {
      report.pass = false;
      report.witness = SubmodularityWitness{bs, bt, i, gain_s, gain_t};
      return report;
    }
  }
  return report;
}

}  // namespace

SubmodularityReport VerifySubmodularity(const SubmodularOracle& f,
                                        const VerifyOptions& options) {
  if (options.mode == VerifyOptions::Mode::kSampled) {
    return VerifySampled(f, options);
  }
  if (f.n() > kMaxExhaustiveVerify) {
    throw Error(ErrorKind::kSize,
                "exhaustive submodularity check needs n <= " +
                    std::to_string(kMaxExhaustiveVerify) + " (got " +
                    std::to_string(f.n()) + "); use sampled mode");
  }
  return VerifyExhaustive(f);
}

DirectedGraph RandomDigraph(int n, double density, double weight_min,
                            double weight_max, std::uint64_t seed) {
  if (n < 1 || n > kMaxGroundSize) {
    throw Error(ErrorKind::kConfig, "random digraph needs 1 <= n <= 30");
  }
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorKind::kConfig, "edge density must lie in [0, 1]");
  }
  if (!(weight_min >= 0.0 && weight_min <= weight_max)) {
    throw Error(ErrorKind::kConfig,
                "weight range must satisfy 0 <= weight_min <= weight_max");
  }
  CoinStream coins(seed);
  DirectedGraph g;
  g.n = n;
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u == v) continue;
      // Both draws happen for every pair so the stream position does not
      // depend on earlier outcomes.
      const double keep = coins.Uniform();
      const double weight = coins.Uniform(weight_min, weight_max);
      if (keep < density) g.edges.push_back({u, v, weight});
    }
  }
  return g;
}

namespace {

void SynthInto(const InstanceFamily& family, std::size_t count,
               std::uint64_t seed, std::vector<SubmodularOracle>& out) {
  if (family.name == "random-digraph-cut") {
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(Normalize(RandomDigraph(family.n, family.density,
                                            family.weight_min,
                                            family.weight_max,
                                            DeriveSeed(seed, k))));
    }
  } else if (family.name == "cycle-through") {
    if (family.graphs.empty()) {
      throw Error(ErrorKind::kConfig, "cycle-through needs at least one graph");
    }
    std::vector<SubmodularOracle> base;
    for (const DirectedGraph& g : family.graphs) base.push_back(Normalize(g));
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(base[k % base.size()]);
    }
  } else if (family.name == "mixture") {
    if (family.components.empty()) {
      throw Error(ErrorKind::kConfig, "mixture needs at least one component");
    }
    CoinStream picker(DeriveSeed(seed, 0xA11CE));
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t c = picker.Below(family.components.size());
      const InstanceFamily& component = family.components[c];
      if (component.name == "cycle-through" && !component.graphs.empty()) {
        // A cycling component contributes its k-th element.
        out.push_back(
            Normalize(component.graphs[k % component.graphs.size()]));
      } else {
        SynthInto(component, 1, DeriveSeed(seed, k), out);
      }
    }
  } else {
    throw Error(ErrorKind::kConfig,
                "unknown instance family '" + family.name + "'");
  }
}

}  // namespace

std::vector<SubmodularOracle> SynthSequence(const InstanceFamily& family,
                                            std::size_t count,
                                            std::uint64_t seed) {
  std::vector<SubmodularOracle> out;
  out.reserve(count);
  SynthInto(family, count, seed, out);
  return out;
}

DirectedGraph ParseGraph(std::istream& in) {
  DirectedGraph g;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::kInvalidInstance,
                  "line " + std::to_string(line_no) + ": " + what);
    };
    if (!have_header) {
      std::string keyword;
      if (!(fields >> keyword >> g.n) || keyword != "digraph") {
        fail("expected header 'digraph <n>'");
      }
      have_header = true;
    } else {
      Edge e;
      if (!(fields >> e.source >> e.target >> e.weight)) {
        fail("expected '<source> <target> <weight>'");
      }
      g.edges.push_back(e);
    }
    std::string extra;
    if (fields >> extra) fail("unexpected trailing field '" + extra + "'");
  }
  if (!have_header) {
    throw Error(ErrorKind::kInvalidInstance, "missing 'digraph <n>' header");
  }
  g.Validate();
  return g;
}

DirectedGraph LoadGraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open graph file " + path);
  try {
    return ParseGraph(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void WriteGraph(std::ostream& out, const DirectedGraph& g) {
  out << "digraph " << g.n << '\n';
  char buf[64];
  for (const Edge& e : g.edges) {
    std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
    out << e.source << ' ' << e.target << ' ' << buf << '\n';
  }
}

}  // namespace ousm
