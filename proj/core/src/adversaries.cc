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
#include <map>
#include <string>
#include <utility>

#include "ousm/errors.h"
#include "ousm/rng.h"

namespace ousm {
namespace {

BalancePoint SymbolPoint(char c) {
  switch (c) {
    case 'U':
      return kUp;
    case 'R':
      return kRight;
    case 'L':
      return kLeft;
    default:
      throw Error(ErrorKind::kConfig,
                  std::string("unknown pattern symbol '") + c +
                      "' (expected U, R or L)");
  }
}

struct Descriptor {
  std::string kind;
  std::string arg;
  std::map<std::string, std::string> params;
};

Descriptor ParseDescriptor(std::string_view text) {
  Descriptor d;
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  const std::string& head = parts.front();
  const auto colon = head.find(':');
  d.kind = head.substr(0, colon);
  if (colon != std::string::npos) d.arg = head.substr(colon + 1);
  if (d.kind.empty()) {
    throw Error(ErrorKind::kConfig, "empty adversary descriptor");
  }
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto eq = parts[k].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::kConfig, "adversary parameter '" + parts[k] +
                                          "' is not key=value");
    }
    d.params[parts[k].substr(0, eq)] = parts[k].substr(eq + 1);
  }
  return d;
}

double ParseNumber(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw Error(ErrorKind::kConfig,
                "adversary parameter " + key + "='" + value +
                    "' is not a number");
  }
  return out;
}

int ParseCount(const std::string& what, const std::string& value) {
  const double v = ParseNumber(what, value);
  if (v < 1 || v != std::floor(v) || v > 1e6) {
    throw Error(ErrorKind::kConfig, what + " must be a positive integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<BalancePoint> ExtremalPatternSequence(std::string_view pattern,
                                                  std::int64_t horizon) {
  if (pattern.empty()) {
    throw Error(ErrorKind::kConfig, "extremal pattern must be nonempty");
  }
  std::vector<BalancePoint> cycle;
  for (char c : pattern) cycle.push_back(SymbolPoint(c));
  std::vector<BalancePoint> out;
  out.reserve(horizon > 0 ? horizon : 0);
  for (std::int64_t t = 0; t < horizon; ++t) {
    out.push_back(cycle[t % cycle.size()]);
  }
  return out;
}

AdaptiveRule ParseAdaptiveRule(std::string_view name) {
  if (name == "punish-last") return AdaptiveRule::kPunishLast;
  if (name == "reward-chase") return AdaptiveRule::kRewardChase;
  throw Error(ErrorKind::kConfig,
              "unknown adaptive rule '" + std::string(name) +
                  "' (expected punish-last or reward-chase)");
}

std::string_view AdaptiveRuleName(AdaptiveRule rule) {
  return rule == AdaptiveRule::kPunishLast ? "punish-last" : "reward-chase";
}

BalanceAdversary::BalanceAdversary(Kind kind, std::vector<BalancePoint> points,
                                   AdaptiveRule rule, std::string label)
    : kind_(kind),
      points_(std::move(points)),
      rule_(rule),
      label_(std::move(label)) {}

BalanceAdversary BalanceAdversary::FixedSequence(
    std::vector<BalancePoint> points) {
  if (points.empty()) {
    throw Error(ErrorKind::kConfig, "fixed sequence must be nonempty");
  }
  for (const BalancePoint& pt : points) {
    if (!InTriangle(pt)) {
      throw Error(ErrorKind::kInvalidPoint,
                  "fixed sequence contains a point outside the triangle");
    }
  }
  return BalanceAdversary(Kind::kFixedSequence, std::move(points),
                          AdaptiveRule::kPunishLast, "fixed-sequence");
}

BalanceAdversary BalanceAdversary::Pattern(std::string_view pattern) {
  std::vector<BalancePoint> cycle =
      ExtremalPatternSequence(pattern, static_cast<std::int64_t>(pattern.size()));
  return BalanceAdversary(Kind::kExtremalPattern, std::move(cycle),
                          AdaptiveRule::kPunishLast,
                          "pattern:" + std::string(pattern));
}

BalanceAdversary BalanceAdversary::Adaptive(AdaptiveRule rule) {
  return BalanceAdversary(Kind::kAdaptiveRule, {}, rule,
                          "adaptive:" + std::string(AdaptiveRuleName(rule)));
}

BalanceAdversary BalanceAdversary::FromDescriptor(std::string_view descriptor) {
  const Descriptor d = ParseDescriptor(descriptor);
  if (!d.params.empty()) {
    throw Error(ErrorKind::kConfig,
                "balance adversaries take no key=value parameters");
  }
  if (d.kind == "pattern") return Pattern(d.arg);
  if (d.kind == "adaptive") return Adaptive(ParseAdaptiveRule(d.arg));
  throw Error(ErrorKind::kConfig,
              "unknown balance adversary '" + d.kind +
                  "' (expected pattern:<URL...> or adaptive:<rule>)");
}

std::string BalanceAdversary::Describe() const { return label_; }

BalancePoint BalanceAdversary::Next(std::optional<Decision> last) {
  if (last.has_value()) history_.push_back(last->chose_yes);
  const std::int64_t t = round_++;
  if (kind_ != Kind::kAdaptiveRule) return points_[t % points_.size()];
  if (history_.empty()) return kUp;
  const bool last_yes = history_.back();
  if (rule_ == AdaptiveRule::kPunishLast) return last_yes ? kLeft : kRight;
  return last_yes ? kRight : kLeft;
}

BalancePoint AdaptiveBalanceStep(BalanceAdversary& adversary,
                                 std::optional<Decision> last_decision) {
  if (!adversary.adaptive()) {
    throw Error(ErrorKind::kContract,
                "adaptive step requested from oblivious adversary " +
                    adversary.Describe());
  }
  return adversary.Next(last_decision);
}

UsmAdversary::UsmAdversary(Kind kind, int n, std::string label)
    : kind_(kind), n_(n), label_(std::move(label)) {}

UsmAdversary UsmAdversary::FixedFunction(SubmodularOracle f) {
  UsmAdversary adv(Kind::kFixedFunction, f.n(), "fixed");
  adv.pool_.push_back(std::move(f));
  return adv;
}

UsmAdversary UsmAdversary::Cycle(std::vector<SubmodularOracle> pool) {
  if (pool.empty()) throw Error(ErrorKind::kConfig, "cycle needs oracles");
  UsmAdversary adv(Kind::kCycle, pool.front().n(),
                   "cycle:" + std::to_string(pool.size()));
  for (SubmodularOracle& f : pool) {
    if (f.n() != adv.n_) {
      throw Error(ErrorKind::kConfig, "cycle mixes ground sets");
    }
    adv.pool_.push_back(std::move(f));
  }
  return adv;
}

UsmAdversary UsmAdversary::RandomOblivious(InstanceFamily family,
                                           std::uint64_t seed) {
  // Validate eagerly so that a bad family fails before the run starts.
  SynthSequence(family, 1, seed);
  UsmAdversary adv(Kind::kRandomOblivious, family.n, "random");
  adv.family_ = std::move(family);
  adv.seed_ = seed;
  return adv;
}

UsmAdversary UsmAdversary::Adaptive(AdaptiveRule rule,
                                    std::vector<SubmodularOracle> pool) {
  UsmAdversary adv = Cycle(std::move(pool));
  adv.kind_ = Kind::kAdaptiveRule;
  adv.rule_ = rule;
  adv.label_ = "adaptive:" + std::string(AdaptiveRuleName(rule));
  return adv;
}

UsmAdversary UsmAdversary::FromDescriptor(std::string_view descriptor, int n,
                                          std::uint64_t seed) {
  const Descriptor d = ParseDescriptor(descriptor);
  InstanceFamily family;
  family.name = "random-digraph-cut";
  family.n = n;
  int pool = 4;
  for (const auto& [key, value] : d.params) {
    if (key == "density") {
      family.density = ParseNumber(key, value);
    } else if (key == "wmin") {
      family.weight_min = ParseNumber(key, value);
    } else if (key == "wmax") {
      family.weight_max = ParseNumber(key, value);
    } else if (key == "pool" && d.kind == "adaptive") {
      pool = ParseCount("pool", value);
    } else {
      throw Error(ErrorKind::kConfig, "unknown adversary parameter '" + key +
                                          "' for " + d.kind);
    }
  }
  auto tag = [&](UsmAdversary adv) {
    adv.label_ = std::string(descriptor);
    return adv;
  };
  if (d.kind == "fixed") {
    if (!d.arg.empty()) {
      throw Error(ErrorKind::kConfig, "fixed takes no argument");
    }
    return tag(FixedFunction(SynthSequence(family, 1, seed).front()));
  }
  if (d.kind == "cycle") {
    const int k = d.arg.empty() ? 4 : ParseCount("cycle length", d.arg);
    return tag(Cycle(SynthSequence(family, k, seed)));
  }
  if (d.kind == "random") {
    if (!d.arg.empty()) {
      throw Error(ErrorKind::kConfig, "random takes no argument");
    }
    return tag(RandomOblivious(family, seed));
  }
  if (d.kind == "mixture") {
    const int k = d.arg.empty() ? 4 : ParseCount("mixture size", d.arg);
    InstanceFamily mixture;
    mixture.name = "mixture";
    mixture.n = n;
    for (int c = 0; c < k; ++c) {
      InstanceFamily single;
      single.name = "cycle-through";
      single.n = n;
      single.graphs.push_back(RandomDigraph(n, family.density,
                                            family.weight_min,
                                            family.weight_max,
                                            DeriveSeed(seed, c)));
      mixture.components.push_back(std::move(single));
    }
    return tag(RandomOblivious(std::move(mixture), DeriveSeed(seed, k)));
  }
  if (d.kind == "adaptive") {
    return tag(Adaptive(ParseAdaptiveRule(d.arg),
                        SynthSequence(family, pool, seed)));
  }
  if (d.kind == "graph") {
    if (!d.params.empty()) {
      throw Error(ErrorKind::kConfig, "graph adversary takes no parameters");
    }
    std::vector<SubmodularOracle> oracles;
    std::string path;
    for (std::size_t k = 0; k <= d.arg.size(); ++k) {
      if (k == d.arg.size() || d.arg[k] == '+') {
        if (path.empty()) {
          throw Error(ErrorKind::kConfig, "graph adversary needs file paths");
        }
        oracles.push_back(Normalize(LoadGraph(path)));
        path.clear();
      } else {
        path += d.arg[k];
      }
    }
    if (oracles.front().n() != n) {
      throw Error(ErrorKind::kConfig,
                  "graph has " + std::to_string(oracles.front().n()) +
                      " vertices but n=" + std::to_string(n));
    }
    return tag(Cycle(std::move(oracles)));
  }
  throw Error(ErrorKind::kConfig,
              "unknown usm adversary '" + d.kind +
                  "' (expected fixed, cycle, mixture, random, adaptive or graph)");
}

const SubmodularOracle& UsmAdversary::Next(std::int64_t round,
                                           std::optional<Subset> last_chosen) {
  switch (kind_) {
    case Kind::kFixedFunction:
      return pool_.front();
    case Kind::kCycle:
      return pool_[static_cast<std::size_t>((round - 1) % pool_.size())];
    case Kind::kRandomOblivious:
      pool_.push_back(
          SynthSequence(family_, 1, DeriveSeed(seed_, round)).front());
      return pool_.back();
    case Kind::kAdaptiveRule: {
      if (!last_chosen.has_value()) return pool_.front();
      std::size_t pick = 0;
      double pick_value = pool_.front().Evaluate(*last_chosen);
      for (std::size_t k = 1; k < pool_.size(); ++k) {
        const double v = pool_[k].Evaluate(*last_chosen);
        const bool better = rule_ == AdaptiveRule::kPunishLast
                                ? v < pick_value
                                : v > pick_value;
        if (better) {
          pick = k;
          pick_value = v;
        }
      }
      return pool_[pick];
    }
  }
  return pool_.front();
}

std::vector<CovarianceRule> BuiltinCovarianceRules() {
  // With T = 16 a left move lowers p by 1/4 and a right move raises it.
  constexpr double kStep = 0.25;
  return {
      {"copy", 0.5, [](bool x1) { return x1 ? 1.0 : 0.0; }},
      {"invert", 0.5, [](bool x1) { return x1 ? 0.0 : 1.0; }},
      {"constant", 0.5, [](bool) { return 0.3; }},
      {"balancer-vs-punish-last", 0.5,
       [](bool x1) { return x1 ? 0.5 - kStep : 0.5 + kStep; }},
      {"balancer-vs-reward-chase", 0.5,
       [](bool x1) { return x1 ? 0.5 + kStep : 0.5 - kStep; }},
  };
}

double CovarianceEstimate(const CovarianceRule& rule, std::uint64_t samples,
                          std::uint64_t seed) {
  if (samples < 1000) {
    throw Error(ErrorKind::kConfig,
                "covariance estimate needs at least 1000 samples");
  }
  if (!(rule.p1 >= 0.0 && rule.p1 <= 1.0)) {
    throw Error(ErrorKind::kConfig, "p1 must lie in [0, 1]");
  }
  CoinStream coins(seed);
  double mean_a = 0.0, mean_b = 0.0, co = 0.0;
  for (std::uint64_t k = 1; k <= samples; ++k) {
    const bool x1 = coins.Uniform() < rule.p1;
    const double p2 = rule.p2(x1);
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
      throw Error(ErrorKind::kConfig, "rule " + rule.name +
                                          " produced p2 outside [0, 1]");
    }
    const bool x2 = coins.Uniform() < p2;
    const double a = (x1 ? 1.0 : 0.0) - rule.p1;
    const double b = (x2 ? 1.0 : 0.0) - p2;
    // Online co-moment update.
    const double da = a - mean_a;
    mean_a += da / static_cast<double>(k);
    mean_b += (b - mean_b) / static_cast<double>(k);
    co += da * (b - mean_b);
  }
  return co / static_cast<double>(samples - 1);
}

}  // namespace ousm
