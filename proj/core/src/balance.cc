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

#include "ousm/balance.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ousm/errors.h"

namespace ousm {
namespace {

constexpr double kPointSlack = 1e-6;

std::string PointString(const BalancePoint& pt) {
  return "(" + std::to_string(pt.alpha) + ", " + std::to_string(pt.beta) + ")";
}

void RequireHorizon(std::int64_t horizon) {
  if (horizon < 1) {
    throw Error(ErrorKind::kConfig,
                "horizon must be positive, got " + std::to_string(horizon));
  }
}

}  // namespace

bool InTriangle(BalancePoint pt, double tolerance) {
  return pt.alpha <= 1.0 + tolerance && pt.beta <= 1.0 + tolerance &&
         pt.alpha >= -1.0 - tolerance && pt.beta >= -1.0 - tolerance &&
         pt.alpha + pt.beta >= -tolerance;
}

ConvexWeights Decompose(BalancePoint pt) {
  if (!InTriangle(pt, kPointSlack) || !std::isfinite(pt.alpha) ||
      !std::isfinite(pt.beta)) {
    throw Error(ErrorKind::kInvalidPoint,
                "balance point " + PointString(pt) + " outside the triangle");
  }
  ConvexWeights w{(pt.alpha + pt.beta) / 2.0, (1.0 - pt.beta) / 2.0,
                  (1.0 - pt.alpha) / 2.0};
  if (w.up < 0.0 || w.right < 0.0 || w.left < 0.0) {
    w.up = std::max(w.up, 0.0);
    w.right = std::max(w.right, 0.0);
    w.left = std::max(w.left, 0.0);
    const double total = w.up + w.right + w.left;
    w.up /= total;
    w.right /= total;
    w.left /= total;
  }
  return w;
}

BalancePoint Reconstruct(const ConvexWeights& w) {
  return {w.up + w.right - w.left, w.up - w.right + w.left};
}

Decision BalanceSubroutine::Decide(double coin) {
  const double p = ProbabilityYes();
  return {coin < p, p};
}

BalancerState BalancerState::Initial(std::int64_t horizon) {
  RequireHorizon(horizon);
  BalancerState s;
  s.horizon = horizon;
  s.sqrt_horizon = std::sqrt(static_cast<double>(horizon));
  s.x = 0.5 * s.sqrt_horizon;
  return s;
}

void BalancerUpdate(BalancerState& state, const BalancePoint& pt) {
  const ConvexWeights w = Decompose(pt);
  const double p = state.Probability();
  state.x += (1.0 - 2.0 * p) * w.up + w.right - w.left;
  state.x = std::clamp(state.x, 0.0, state.sqrt_horizon);
}

Decision BalancerStep(BalancerState& state, const BalancePoint& pt,
                      double coin) {
  const double p = state.Probability();
  const Decision d{coin < p, p};
  BalancerUpdate(state, pt);
  return d;
}

UsmBalancer::UsmBalancer(std::int64_t horizon)
    : state_(BalancerState::Initial(horizon)) {}

void UsmBalancer::Observe(const BalancePoint& pt) {
  BalancerUpdate(state_, pt);
}

TwoExpertsState TwoExpertsState::Initial(std::int64_t horizon) {
  RequireHorizon(horizon);
  TwoExpertsState s;
  s.eta = std::sqrt(8.0 * std::log(2.0) / static_cast<double>(horizon));
  return s;
}

double TwoExpertsState::Probability() const {
  return 1.0 / (1.0 + std::exp(log_w_no - log_w_yes));
}

double TwoExpertsState::WeightRatio() const {
  return std::exp(log_w_yes - log_w_no);
}

void MwUpdate(TwoExpertsState& state, const BalancePoint& pt) {
  state.log_w_yes += state.eta * (pt.alpha + 1.0) / 2.0;
  state.log_w_no += state.eta * (pt.beta + 1.0) / 2.0;
  // Only the difference matters; recentering keeps the logs bounded.
  const double shift = std::max(state.log_w_yes, state.log_w_no);
  state.log_w_yes -= shift;
  state.log_w_no -= shift;
}

Decision MwStep(TwoExpertsState& state, const BalancePoint& pt, double coin) {
  const double p = state.Probability();
  const Decision d{coin < p, p};
  MwUpdate(state, pt);
  return d;
}

MultiplicativeWeights::MultiplicativeWeights(std::int64_t horizon)
    : state_(TwoExpertsState::Initial(horizon)) {}

FixedProbability::FixedProbability(std::string name, double p)
    : name_(std::move(name)), p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kConfig, "fixed probability must lie in [0, 1]");
  }
}

HorizonDoubling::HorizonDoubling(SubroutineFactory factory)
    : factory_(std::move(factory)), inner_(factory_(1)) {
  name_ = "doubling-" + std::string(inner_->name());
}

Decision HorizonDoubling::Decide(double coin) {
  if (rounds_ + 1 > guess_) {
    while (rounds_ + 1 > guess_) guess_ *= 2;
    inner_ = factory_(guess_);
    ++restarts_;
  }
  return inner_->Decide(coin);
}

void HorizonDoubling::Observe(const BalancePoint& pt) {
  inner_->Observe(pt);
  ++rounds_;
}

namespace {

std::unique_ptr<BalanceSubroutine> MakeBase(std::string_view name,
                                            std::int64_t horizon) {
  RequireHorizon(horizon);
  if (name == "balancer") return std::make_unique<UsmBalancer>(horizon);
  if (name == "mw") return std::make_unique<MultiplicativeWeights>(horizon);
  if (name == "uniform") {
    return std::make_unique<FixedProbability>("uniform", 0.5);
  }
  if (name == "always-yes") {
    return std::make_unique<FixedProbability>("always-yes", 1.0);
  }
  if (name == "always-no") {
    return std::make_unique<FixedProbability>("always-no", 0.0);
  }
  throw Error(ErrorKind::kConfig,
              "unknown subroutine '" + std::string(name) +
                  "' (expected balancer, mw, uniform, always-yes, always-no)");
}

constexpr std::string_view kDoublingPrefix = "doubling-";

}  // namespace

std::unique_ptr<BalanceSubroutine> MakeSubroutine(std::string_view name,
                                                  std::int64_t horizon) {
  if (name.starts_with(kDoublingPrefix)) {
    const std::string inner(name.substr(kDoublingPrefix.size()));
    MakeBase(inner, 1);  // validates the name eagerly
    return std::make_unique<HorizonDoubling>(
        [inner](std::int64_t guess) { return MakeBase(inner, guess); });
  }
  return MakeBase(name, horizon);
}

bool IsKnownSubroutine(std::string_view name) {
  if (name.starts_with(kDoublingPrefix)) name.remove_prefix(kDoublingPrefix.size());
  return name == "balancer" || name == "mw" || name == "uniform" ||
         name == "always-yes" || name == "always-no";
}

Ledger LedgerUpdate(const Ledger& ledger, const Decision& d,
                    const BalancePoint& pt) {
  Ledger next = ledger;
  if (d.chose_yes) {
    next.r_alg += 0.5 * pt.alpha;
    next.c_no += pt.beta;
  } else {
    next.r_alg += 0.5 * pt.beta;
    next.c_yes += pt.alpha;
  }
  return next;
}

double BalanceAlphaRegret(const Ledger& ledger, double a) {
  return a * std::max(ledger.c_yes, ledger.c_no) - ledger.r_alg;
}

Potentials ComputePotentials(double x, std::int64_t horizon) {
  RequireHorizon(horizon);
  const double root = std::sqrt(static_cast<double>(horizon));
  if (!(x >= 0.0 && x <= root)) {
    throw Error(ErrorKind::kDomain, "potential argument " + std::to_string(x) +
                                        " outside [0, sqrt(T)]");
  }
  const double centered = 2.0 * x - root;
  const double gap = root - x;
  return {root / 8.0 - centered * centered / (8.0 * root),
          gap * gap / (2.0 * root), x * x / (2.0 * root)};
}

bool StepDeltas::InvariantHolds(std::int64_t horizon) const {
  const double slack = 2.0 / std::sqrt(static_cast<double>(horizon));
  return d_alg >= std::max(d_yes, d_no) - slack;
}

StepDeltas StepInvariantDeltas(double p, const BalancePoint& pt,
                               std::int64_t horizon) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::kDomain, "probability outside [0, 1]");
  }
  BalancerState state = BalancerState::Initial(horizon);
  state.x = p * state.sqrt_horizon;
  const Potentials before = ComputePotentials(state.x, horizon);
  BalancerUpdate(state, pt);
  const Potentials after = ComputePotentials(state.x, horizon);

  StepDeltas out;
  out.reward = 0.5 * (p * pt.alpha + (1.0 - p) * pt.beta);
  out.cost_yes = (1.0 - p) * pt.alpha;
  out.cost_no = p * pt.beta;
  out.d_alg = out.reward + (after.alg - before.alg);
  out.d_yes = out.cost_yes + (after.yes - before.yes);
  out.d_no = out.cost_no + (after.no - before.no);
  return out;
}

}  // namespace ousm
