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

#ifndef OUSM_BALANCE_H_
#define OUSM_BALANCE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace ousm {

// The adversary's move in the balance game: a point of the triangle with
// vertices up (1, 1), right (1, -1) and left (-1, 1).
struct BalancePoint {
  double alpha = 0.0;  // reward for yes
  double beta = 0.0;   // reward for no
};

inline constexpr BalancePoint kUp{1.0, 1.0};
inline constexpr BalancePoint kRight{1.0, -1.0};
inline constexpr BalancePoint kLeft{-1.0, 1.0};

// -1 <= alpha, beta <= 1 and alpha + beta >= 0, each up to `tolerance`.
bool InTriangle(BalancePoint pt, double tolerance = 1e-9);

// Barycentric weights on (up, right, left).
struct ConvexWeights {
  double up = 0.0;
  double right = 0.0;
  double left = 0.0;
};

// Unique weights with up*(1,1) + right*(1,-1) + left*(-1,1) = pt. Slightly
// negative weights from rounding are clamped to zero and the rest
// renormalized. Throws Error(kInvalidPoint) when pt is more than 1e-6
// outside the triangle.
ConvexWeights Decompose(BalancePoint pt);
BalancePoint Reconstruct(const ConvexWeights& w);

struct Decision {
  bool chose_yes = false;
  double p_used = 0.0;  // probability of yes at decision time
};

// A binary-action online learner. Each round the caller invokes Decide once
// with a fresh uniform draw, then Observe once with the revealed point.
class BalanceSubroutine {
 public:
  virtual ~BalanceSubroutine() = default;

  virtual std::string_view name() const = 0;

  // Current probability of answering yes.
  virtual double ProbabilityYes() const = 0;

  // Yes iff coin < ProbabilityYes().
  virtual Decision Decide(double coin);

  // Rewards (alpha for yes, beta for no) of the round just decided.
  virtual void Observe(const BalancePoint& pt) = 0;
};

// x in [0, sqrt(T)] determines the probability of yes, x / sqrt(T).
struct BalancerState {
  double x = 0.0;
  std::int64_t horizon = 1;
  double sqrt_horizon = 1.0;

  static BalancerState Initial(std::int64_t horizon);
  double Probability() const { return x / sqrt_horizon; }
};

// One Balancer round: decide with p = x / sqrt(T), then move x by
// (1 - 2p) * up + right - left and cap it back into [0, sqrt(T)].
Decision BalancerStep(BalancerState& state, const BalancePoint& pt,
                      double coin);

// The x update alone; the decision is irrelevant to it.
void BalancerUpdate(BalancerState& state, const BalancePoint& pt);

class UsmBalancer : public BalanceSubroutine {
 public:
  explicit UsmBalancer(std::int64_t horizon);

  std::string_view name() const override { return "balancer"; }
  double ProbabilityYes() const override { return state_.Probability(); }
  void Observe(const BalancePoint& pt) override;

  const BalancerState& state() const { return state_; }

 private:
  BalancerState state_;
};

// Hedge over the two experts "always yes" and "always no". Weights are kept
// in log space; rewards are mapped from [-1, 1] to [0, 1].
struct TwoExpertsState {
  double log_w_yes = 0.0;
  double log_w_no = 0.0;
  double eta = 1.0;

  // sqrt(8 ln 2 / T).
  static TwoExpertsState Initial(std::int64_t horizon);
  double Probability() const;
  double WeightRatio() const;  // w_yes / w_no
};

Decision MwStep(TwoExpertsState& state, const BalancePoint& pt, double coin);
void MwUpdate(TwoExpertsState& state, const BalancePoint& pt);

class MultiplicativeWeights : public BalanceSubroutine {
 public:
  explicit MultiplicativeWeights(std::int64_t horizon);

  std::string_view name() const override { return "mw"; }
  double ProbabilityYes() const override { return state_.Probability(); }
  void Observe(const BalancePoint& pt) override { MwUpdate(state_, pt); }

  const TwoExpertsState& state() const { return state_; }

 private:
  TwoExpertsState state_;
};

// Ignores feedback and says yes with a fixed probability. Covers the
// "uniform" (1/2), "always-yes" (1) and "always-no" (0) baselines.
class FixedProbability : public BalanceSubroutine {
 public:
  FixedProbability(std::string name, double p);

  std::string_view name() const override { return name_; }
  double ProbabilityYes() const override { return p_; }
  void Observe(const BalancePoint&) override {}

 private:
  std::string name_;
  double p_;
};

using SubroutineFactory =
    std::function<std::unique_ptr<BalanceSubroutine>(std::int64_t horizon)>;

// Runs an inner subroutine without knowing the horizon. The current guess
// starts at 1; when the total number of rounds is about to exceed it, the
// guess doubles and the inner subroutine is rebuilt from scratch.
class HorizonDoubling : public BalanceSubroutine {
 public:
  explicit HorizonDoubling(SubroutineFactory factory);

  std::string_view name() const override { return name_; }
  double ProbabilityYes() const override { return inner_->ProbabilityYes(); }
  Decision Decide(double coin) override;
  void Observe(const BalancePoint& pt) override;

  std::int64_t guess() const { return guess_; }
  int restarts() const { return restarts_; }
  std::int64_t rounds() const { return rounds_; }
  const BalanceSubroutine& inner() const { return *inner_; }

 private:
  SubroutineFactory factory_;
  std::unique_ptr<BalanceSubroutine> inner_;
  std::string name_;
  std::int64_t guess_ = 1;
  std::int64_t rounds_ = 0;
  int restarts_ = 0;
};

// Builds a subroutine by name: balancer, mw, uniform, always-yes, always-no,
// or any of these prefixed with "doubling-". Throws Error(kConfig) for an
// unknown name or a nonpositive horizon.
std::unique_ptr<BalanceSubroutine> MakeSubroutine(std::string_view name,
                                                  std::int64_t horizon);
bool IsKnownSubroutine(std::string_view name);

// Algorithm reward and the adversary's two piles of missed opportunity.
struct Ledger {
  double r_alg = 0.0;
  double c_yes = 0.0;
  double c_no = 0.0;
};

// Yes: r_alg += alpha / 2, c_no += beta. No: r_alg += beta / 2,
// c_yes += alpha.
Ledger LedgerUpdate(const Ledger& ledger, const Decision& d,
                    const BalancePoint& pt);

// a * max(c_yes, c_no) - r_alg.
double BalanceAlphaRegret(const Ledger& ledger, double a);

struct Potentials {
  double alg = 0.0;
  double yes = 0.0;
  double no = 0.0;
};

// Potentials of the Balancer's analysis at x in [0, sqrt(T)]:
//   alg = sqrt(T)/8 - (2x - sqrt(T))^2 / (8 sqrt(T))
//   yes = (sqrt(T) - x)^2 / (2 sqrt(T))
//   no  = x^2 / (2 sqrt(T))
// Throws Error(kDomain) for x outside the interval.
Potentials ComputePotentials(double x, std::int64_t horizon);

// Expected one-round changes when the Balancer is at p and the adversary
// plays pt. reward/cost_* are the expected ledger increments; d_* add the
// exact change of the matching potential after update and cap.
struct StepDeltas {
  double reward = 0.0;
  double cost_yes = 0.0;
  double cost_no = 0.0;
  double d_alg = 0.0;
  double d_yes = 0.0;
  double d_no = 0.0;

  // d_alg >= max(d_yes, d_no) - 2 / sqrt(T).
  bool InvariantHolds(std::int64_t horizon) const;
};

StepDeltas StepInvariantDeltas(double p, const BalancePoint& pt,
                               std::int64_t horizon);

}  // namespace ousm

#endif  // OUSM_BALANCE_H_
