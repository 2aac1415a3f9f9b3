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

#include "ousm/framework.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <utility>

#include "ousm/errors.h"

namespace ousm {
namespace {

// Per-round value cache. Counts the oracle queries it issues.
class RoundMemo {
 public:
  explicit RoundMemo(const SubmodularOracle& f) : f_(f) {}

  double Value(Subset s) {
    for (const auto& [set, value] : entries_) {
      if (set == s) return value;
    }
    const double value = f_.Evaluate(s);
    entries_.emplace_back(s, value);
    return value;
  }

  std::uint64_t misses() const { return entries_.size(); }

 private:
  const SubmodularOracle& f_;
  std::vector<std::pair<Subset, double>> entries_;
};

Subset BelowMask(int i) { return Subset::Full(i - 1); }

}  // namespace

BalancePoint MarginalPair(const SubmodularOracle& f, Subset x, Subset y,
                          int i) {
  if (i < 1 || i > f.n()) {
    throw Error(ErrorKind::kContract,
                "element " + std::to_string(i) + " outside ground set");
  }
  if (!x.IsSubsetOf(y) || x.Contains(i) || !y.Contains(i)) {
    throw Error(ErrorKind::kContract,
                "marginal pair needs X subset of Y with i in Y \\ X (X=" +
                    x.ToString() + ", Y=" + y.ToString() +
                    ", i=" + std::to_string(i) + ")");
  }
  const Subset below = BelowMask(i);
  if ((x & below) != (y & below)) {
    throw Error(ErrorKind::kContract,
                "X and Y must agree on elements below " + std::to_string(i));
  }
  const double fx = f.Evaluate(x);
  const double fy = f.Evaluate(y);
  return {f.Evaluate(x.With(i)) - fx, f.Evaluate(y.Without(i)) - fy};
}

RoundTranscript RunRound(
    std::span<const std::unique_ptr<BalanceSubroutine>> subroutines,
    const SubmodularOracle& f, std::span<CoinStream> coins,
    std::int64_t round) {
  const int n = f.n();
  if (static_cast<int>(subroutines.size()) != n ||
      static_cast<int>(coins.size()) != n) {
    throw Error(ErrorKind::kConfig,
                "round needs one subroutine and coin stream per element: n=" +
                    std::to_string(n) + ", subroutines=" +
                    std::to_string(subroutines.size()) +
                    ", coin streams=" + std::to_string(coins.size()));
  }
  RoundTranscript tr;
  tr.round = round;
  tr.decisions.reserve(n);
  tr.marginals.reserve(n);
  tr.x_sets.reserve(n + 1);
  tr.y_sets.reserve(n + 1);

  Subset x = Subset::Empty();
  Subset y = Subset::Full(n);
  tr.x_sets.push_back(x);
  tr.y_sets.push_back(y);
  for (int i = 1; i <= n; ++i) {
    const Decision d = subroutines[i - 1]->Decide(coins[i - 1].Uniform());
    if (d.chose_yes) {
      x = x.With(i);
    } else {
      y = y.Without(i);
    }
    tr.decisions.push_back(d);
    tr.x_sets.push_back(x);
    tr.y_sets.push_back(y);
  }
  tr.chosen = x;

  // The function is revealed only after the set is fixed.
  RoundMemo memo(f);
  for (int i = 1; i <= n; ++i) {
    const Subset xp = tr.x_sets[i - 1];
    const Subset yp = tr.y_sets[i - 1];
    const BalancePoint pt{memo.Value(xp.With(i)) - memo.Value(xp),
                          memo.Value(yp.Without(i)) - memo.Value(yp)};
    tr.marginals.push_back(pt);
    subroutines[i - 1]->Observe(pt);
  }
  tr.reward = memo.Value(tr.chosen);
  tr.queries = memo.misses();
  return tr;
}

OnlineUsm::OnlineUsm(int n, std::int64_t horizon, std::string_view subroutine,
                     std::uint64_t coin_seed) {
  if (n < 1 || n > kMaxGroundSize) {
    throw Error(ErrorKind::kConfig, "n must lie in [1, 30]");
  }
  subroutines_.reserve(n);
  coins_.reserve(n);
  for (int i = 1; i <= n; ++i) {
    subroutines_.push_back(MakeSubroutine(subroutine, horizon));
    coins_.emplace_back(DeriveSeed(coin_seed, static_cast<std::uint64_t>(i)));
  }
}

OnlineUsm::OnlineUsm(
    std::vector<std::unique_ptr<BalanceSubroutine>> subroutines,
    std::vector<CoinStream> coins)
    : subroutines_(std::move(subroutines)), coins_(std::move(coins)) {
  if (subroutines_.size() != coins_.size()) {
    throw Error(ErrorKind::kConfig,
                "need one coin stream per subroutine");
  }
}

RoundTranscript OnlineUsm::Play(const SubmodularOracle& f) {
  ++rounds_;
  return RunRound(subroutines_, f, coins_, rounds_);
}

FixedSetValue BestFixedSet(std::span<const HistoryEntry> history) {
  if (history.empty()) return {};
  const int n = history.front().oracle->n();
  if (n > kMaxOptEnumeration) {
    throw Error(ErrorKind::kSize,
                "hindsight optimum enumerates 2^n sets; needs n <= 20 (got " +
                    std::to_string(n) + ")");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> totals(count, 0.0);
  for (const HistoryEntry& h : history) {
    if (h.oracle->n() != n) {
      throw Error(ErrorKind::kContract, "history mixes ground sets");
    }
    for (std::uint64_t m = 0; m < count; ++m) {
      totals[m] += h.oracle->Evaluate(Subset(m));
    }
  }
  FixedSetValue best{Subset(0), totals[0]};
  for (std::uint64_t m = 1; m < count; ++m) {
    if (totals[m] > best.total) best = {Subset(m), totals[m]};
  }
  return best;
}

double UsmAlphaRegret(std::span<const HistoryEntry> history, double a,
                      std::optional<Subset> opt) {
  double opt_total = 0.0;
  if (opt.has_value()) {
    for (const HistoryEntry& h : history) opt_total += h.oracle->Evaluate(*opt);
  } else {
    opt_total = BestFixedSet(history).total;
  }
  double alg_total = 0.0;
  for (const HistoryEntry& h : history) {
    alg_total += h.oracle->Evaluate(h.chosen);
  }
  return a * opt_total - alg_total;
}

OptTrackingResult OptTrackingCheck(const RoundTranscript& transcript,
                                   const SubmodularOracle& f, Subset opt) {
  const int n = f.n();
  if (n > kMaxExhaustiveVerify) {
    throw Error(ErrorKind::kSize, "OPT tracking replay needs n <= 16");
  }
  if (static_cast<int>(transcript.decisions.size()) != n ||
      static_cast<int>(transcript.x_sets.size()) != n + 1 ||
      static_cast<int>(transcript.y_sets.size()) != n + 1) {
    throw Error(ErrorKind::kContract, "transcript does not match ground set");
  }
  auto fail = [](int i, const char* relation, double lhs, double rhs) {
    return OptTrackingResult{false, i, relation, lhs, rhs};
  };
  Subset opt_prev = opt;
  for (int i = 1; i <= n; ++i) {
    const bool yes = transcript.decisions[i - 1].chose_yes;
    const BalancePoint& m = transcript.marginals[i - 1];
    const double x_gain = f.Evaluate(transcript.x_sets[i]) -
                          f.Evaluate(transcript.x_sets[i - 1]);
    const double y_gain = f.Evaluate(transcript.y_sets[i]) -
                          f.Evaluate(transcript.y_sets[i - 1]);
    const double want_x = yes ? m.alpha : 0.0;
    const double want_y = yes ? 0.0 : m.beta;
    if (std::abs(x_gain - want_x) > kTolerance) {
      return fail(i, "x-gain", x_gain, want_x);
    }
    if (std::abs(y_gain - want_y) > kTolerance) {
      return fail(i, "y-gain", y_gain, want_y);
    }
    const Subset opt_next = yes ? opt_prev.With(i) : opt_prev.Without(i);
    const double f_prev = f.Evaluate(opt_prev);
    const double f_next = f.Evaluate(opt_next);
    if (opt_prev.Contains(i) == yes) {
      if (std::abs(f_next - f_prev) > kTolerance) {
        return fail(i, "opt-unchanged", f_next, f_prev);
      }
    } else {
      // Dropping i from OPT costs at most alpha (X is below OPT); adding i
      // costs at most beta (Y is above OPT).
      const double loss_bound = yes ? m.beta : m.alpha;
      if (f_next < f_prev - loss_bound - kTolerance) {
        return fail(i, "opt-drop", f_next, f_prev - loss_bound);
      }
    }
    opt_prev = opt_next;
  }
  return {};
}

std::vector<double> ProgressIdentityResiduals(
    std::span<const RecordedRound> rounds) {
  if (rounds.empty()) return {};
  const int n = rounds.front().oracle->n();
  std::vector<double> gains(n, 0.0);
  std::vector<double> rewards(n, 0.0);
  for (const RecordedRound& r : rounds) {
    const SubmodularOracle& f = *r.oracle;
    const RoundTranscript& tr = r.transcript;
    for (int i = 1; i <= n; ++i) {
      gains[i - 1] += f.Evaluate(tr.x_sets[i]) - f.Evaluate(tr.x_sets[i - 1]) +
                      f.Evaluate(tr.y_sets[i]) - f.Evaluate(tr.y_sets[i - 1]);
      rewards[i - 1] += tr.decisions[i - 1].chose_yes ? tr.marginals[i - 1].alpha
                                                      : tr.marginals[i - 1].beta;
    }
  }
  std::vector<double> residuals(n);
  for (int i = 0; i < n; ++i) residuals[i] = gains[i] - rewards[i];
  return residuals;
}

std::vector<OptDropRow> OptDropRows(std::span<const RecordedRound> rounds,
                                    Subset opt) {
  if (rounds.empty()) return {};
  const int n = rounds.front().oracle->n();
  std::vector<OptDropRow> rows(n);
  std::vector<double> no_alpha(n, 0.0);
  std::vector<double> yes_beta(n, 0.0);
  for (const RecordedRound& r : rounds) {
    const SubmodularOracle& f = *r.oracle;
    const RoundTranscript& tr = r.transcript;
    Subset current = opt;
    double f_current = f.Evaluate(current);
    for (int i = 1; i <= n; ++i) {
      const bool yes = tr.decisions[i - 1].chose_yes;
      const Subset next = yes ? current.With(i) : current.Without(i);
      const double f_next = f.Evaluate(next);
      rows[i - 1].drop += f_current - f_next;
      if (yes) {
        yes_beta[i - 1] += tr.marginals[i - 1].beta;
      } else {
        no_alpha[i - 1] += tr.marginals[i - 1].alpha;
      }
      current = next;
      f_current = f_next;
    }
  }
  for (int i = 0; i < n; ++i) rows[i].bound = std::max(no_alpha[i], yes_beta[i]);
  return rows;
}

std::vector<std::int64_t> RegretCheckpoints(std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (int shift = 4; shift >= 0; --shift) {
    const std::int64_t t = std::max<std::int64_t>(1, horizon >> shift);
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

double FitGrowthExponent(std::span<const double> ts,
                         std::span<const double> regrets) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < ts.size() && k < regrets.size(); ++k) {
    if (ts[k] > 0.0 && regrets[k] > 0.0) {
      pts.emplace_back(std::log(ts[k]), std::log(regrets[k]));
    }
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : pts) {
    mx += lx;
    my += ly;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [lx, ly] : pts) {
    sxy += (lx - mx) * (ly - my);
    sxx += (lx - mx) * (lx - mx);
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

UsmRunResult RunOnlineUsm(OnlineUsm& algorithm, std::int64_t rounds,
                          const OracleSource& source,
                          const UsmRunOptions& options) {
  constexpr std::size_t kTableCacheLimit = 64;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const int n = algorithm.n();
  if (options.track_opt && n > kMaxOptEnumeration) {
    throw Error(ErrorKind::kSize,
                "tracking the hindsight optimum needs n <= 20");
  }
  UsmRunResult result;
  result.rewards.reserve(rounds);
  result.cumulative_reward.reserve(rounds);
  result.cumulative_opt.reserve(rounds);
  result.alpha_regret.reserve(rounds);
  result.cumulative_queries.reserve(rounds);
  result.round_queries.reserve(rounds);

  std::vector<double> totals;
  if (options.track_opt) totals.assign(std::size_t{1} << n, 0.0);
  std::unordered_map<const SubmodularOracle*, std::vector<double>> tables;

  std::optional<Subset> last;
  double cum_reward = 0.0;
  for (std::int64_t t = 1; t <= rounds; ++t) {
    const SubmodularOracle& f = source(t, last);
    if (f.n() != n) {
      throw Error(ErrorKind::kConfig, "oracle ground set does not match n");
    }
    RoundTranscript tr = algorithm.Play(f);
    last = tr.chosen;
    cum_reward += tr.reward;
    result.total_queries += tr.queries;
    result.rewards.push_back(tr.reward);
    result.cumulative_reward.push_back(cum_reward);
    result.round_queries.push_back(tr.queries);
    result.cumulative_queries.push_back(result.total_queries);

    if (options.track_opt) {
      auto it = tables.find(&f);
      std::vector<double> scratch;
      const std::vector<double>* table = nullptr;
      if (it != tables.end()) {
        table = &it->second;
      } else if (tables.size() < kTableCacheLimit) {
        table = &tables.emplace(&f, Tabulate(f)).first->second;
      } else {
        scratch = Tabulate(f);
        table = &scratch;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < totals.size(); ++m) {
        totals[m] += (*table)[m];
        best = std::max(best, totals[m]);
      }
      result.cumulative_opt.push_back(best);
      result.alpha_regret.push_back(options.alpha * best - cum_reward);
    } else {
      result.cumulative_opt.push_back(nan);
      result.alpha_regret.push_back(nan);
    }
    if (options.keep_transcripts) {
      result.transcripts.push_back({&f, std::move(tr)});
    }
  }

  result.growth_exponent = nan;
  if (rounds > 0) {
    std::vector<double> ts, rs;
    for (std::int64_t c : RegretCheckpoints(rounds)) {
      ts.push_back(static_cast<double>(c));
      rs.push_back(result.alpha_regret[c - 1]);
    }
    result.growth_exponent = FitGrowthExponent(ts, rs);
  }
  return result;
}

}  // namespace ousm
