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

#include "ousm/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ousm/balance.h"
#include "ousm/errors.h"
#include "ousm/rng.h"

namespace ousm {
namespace {

using nlohmann::json;

// Stream index for adversary randomness; trial streams use 0, 1, 2, ...
constexpr std::uint64_t kAdversaryStream = ~std::uint64_t{0};

std::string FormatNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json NumberOrNull(double v) { return std::isfinite(v) ? json(v) : json(); }

std::string_view FormatName(OutputFormat f) {
  return f == OutputFormat::kCsv ? "csv" : "json";
}

OutputFormat ParseFormat(const std::string& s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw Error(ErrorKind::kConfig,
              "--format must be csv or json, got '" + s + "'");
}

// Option values as read from the command line, before defaults and the
// config file are applied.
struct RawOptions {
  int n = 0;
  std::int64_t rounds = 0;
  std::string subroutine;
  std::string adversary;
  double alpha = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::string format;
  int workers = 1;
  bool keep_transcripts = false;
  bool summary_only = false;
  bool no_opt = false;
  std::string graph;
  std::uint64_t samples = 0;
  std::string config_file;
};

struct OptionHandles {
  std::map<std::string, CLI::Option*> by_key;
  bool Given(const std::string& key) const {
    auto it = by_key.find(key);
    return it != by_key.end() && it->second->count() > 0;
  }
};

template <typename T>
T JsonValue(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::kConfig,
                "config key '" + key + "' has the wrong type");
  }
}

// Fills options absent from the command line; returns the keys it set.
std::set<std::string> ApplyConfigFile(const std::string& path,
                                      const OptionHandles& given,
                                      RawOptions& raw) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig,
                "config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorKind::kConfig, "config file must hold a JSON object");
  }
  std::set<std::string> applied;
  for (const auto& [key, value] : j.items()) {
    if (!given.by_key.contains(key) || key == "config") {
      throw Error(ErrorKind::kConfig, "unknown config key '" + key + "'");
    }
    if (given.Given(key)) continue;  // command line wins
    applied.insert(key);
    if (key == "n") raw.n = JsonValue<int>(value, key);
    else if (key == "rounds") raw.rounds = JsonValue<std::int64_t>(value, key);
    else if (key == "subroutine") raw.subroutine = JsonValue<std::string>(value, key);
    else if (key == "adversary") raw.adversary = JsonValue<std::string>(value, key);
    else if (key == "alpha") raw.alpha = JsonValue<double>(value, key);
    else if (key == "trials") raw.trials = JsonValue<std::uint64_t>(value, key);
    else if (key == "seed") raw.seed = JsonValue<std::uint64_t>(value, key);
    else if (key == "output") raw.output = JsonValue<std::string>(value, key);
    else if (key == "format") raw.format = JsonValue<std::string>(value, key);
    else if (key == "workers") raw.workers = JsonValue<int>(value, key);
    else if (key == "keep-transcripts") raw.keep_transcripts = JsonValue<bool>(value, key);
    else if (key == "summary-only") raw.summary_only = JsonValue<bool>(value, key);
    else if (key == "no-opt") raw.no_opt = JsonValue<bool>(value, key);
    else if (key == "graph") raw.graph = JsonValue<std::string>(value, key);
    else if (key == "samples") raw.samples = JsonValue<std::uint64_t>(value, key);
  }
  return applied;
}

json ConfigJson(const ExperimentConfig& c) {
  json j;
  j["game"] = std::string(GameName(c.game));
  j["n"] = c.n;
  j["rounds"] = c.rounds;
  j["subroutine"] = c.subroutine;
  j["adversary"] = c.adversary;
  j["alpha"] = c.alpha;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["format"] = std::string(FormatName(c.format));
  j["track_opt"] = c.track_opt;
  return j;
}

double Mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double SampleStddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

struct TrialOutput {
  std::vector<ResultRow> rows;
  std::uint64_t max_round_queries = 0;
  std::vector<RecordedRound> transcripts;
  std::shared_ptr<const UsmAdversary> adversary;
};

TrialOutput RunUsmTrial(const ExperimentConfig& c, std::uint64_t trial) {
  auto adversary = std::make_shared<UsmAdversary>(UsmAdversary::FromDescriptor(
      c.adversary, c.n, DeriveSeed(c.seed, kAdversaryStream)));
  OnlineUsm algorithm(c.n, c.rounds, c.subroutine, DeriveSeed(c.seed, trial));
  UsmRunOptions options;
  options.alpha = c.alpha;
  options.track_opt = c.track_opt;
  options.keep_transcripts = c.keep_transcripts;
  UsmRunResult run = RunOnlineUsm(
      algorithm, c.rounds,
      [&adversary](std::int64_t t,
                   std::optional<Subset> last) -> const SubmodularOracle& {
        return adversary->Next(t, last);
      },
      options);

  TrialOutput out;
  out.rows.reserve(c.rounds);
  for (std::int64_t t = 1; t <= c.rounds; ++t) {
    const std::size_t k = static_cast<std::size_t>(t - 1);
    out.rows.push_back({trial, t, run.rewards[k], run.cumulative_reward[k],
                        run.cumulative_opt[k], run.alpha_regret[k],
                        run.cumulative_queries[k]});
    out.max_round_queries =
        std::max(out.max_round_queries, run.round_queries[k]);
  }
  out.transcripts = std::move(run.transcripts);
  if (c.keep_transcripts) out.adversary = adversary;
  return out;
}

TrialOutput RunBalanceTrial(const ExperimentConfig& c, std::uint64_t trial) {
  BalanceAdversary adversary = BalanceAdversary::FromDescriptor(c.adversary);
  std::unique_ptr<BalanceSubroutine> algorithm =
      MakeSubroutine(c.subroutine, c.rounds);
  CoinStream coins(DeriveSeed(DeriveSeed(c.seed, trial), 1));
  Ledger ledger;
  std::optional<Decision> last;
  TrialOutput out;
  out.rows.reserve(c.rounds);
  for (std::int64_t t = 1; t <= c.rounds; ++t) {
    // The point may depend on earlier decisions only.
    const BalancePoint pt = adversary.Next(last);
    const Decision d = algorithm->Decide(coins.Uniform());
    algorithm->Observe(pt);
    const Ledger next = LedgerUpdate(ledger, d, pt);
    const double best = std::max(next.c_yes, next.c_no);
    out.rows.push_back({trial, t, next.r_alg - ledger.r_alg, next.r_alg, best,
                        BalanceAlphaRegret(next, c.alpha), 0});
    ledger = next;
    last = d;
  }
  return out;
}

// Runs `trials` jobs on `workers` threads; results land in trial order.
std::vector<TrialOutput> RunTrials(const ExperimentConfig& c) {
  std::vector<TrialOutput> outputs(c.trials);
  std::vector<std::exception_ptr> errors(c.trials);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t k = next++; k < c.trials; k = next++) {
      try {
        outputs[k] = c.game == Game::kUsm ? RunUsmTrial(c, k)
                                          : RunBalanceTrial(c, k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::uint64_t threads =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(c.workers), c.trials);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < threads; ++w) pool.emplace_back(work);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outputs;
}

}  // namespace

std::string_view GameName(Game game) {
  switch (game) {
    case Game::kUsm:
      return "usm";
    case Game::kBalance:
      return "balance";
    case Game::kOffline:
      return "offline";
    case Game::kVerify:
      return "verify";
  }
  return "usm";
}

void ValidateConfig(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::kConfig, msg);
  };
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) {
    fail("--alpha must lie in (0, 1], got " + FormatNumber(c.alpha));
  }
  if (c.trials < 1) fail("--trials must be at least 1");
  if (c.workers < 1) fail("--workers must be at least 1");
  if (!IsKnownSubroutine(c.subroutine)) {
    fail("unknown --subroutine '" + c.subroutine + "'");
  }
  switch (c.game) {
    case Game::kUsm:
      if (c.rounds < 1) fail("--rounds must be at least 1");
      if (c.n < 1 || c.n > kMaxGroundSize) {
        fail("--n must lie in [1, 30], got " + std::to_string(c.n));
      }
      if (c.track_opt && c.n > kMaxOptEnumeration) {
        fail("computing the hindsight optimum needs --n <= 20 (got " +
             std::to_string(c.n) + "); pass --no-opt for larger instances");
      }
      if (c.keep_transcripts && c.n > kMaxExhaustiveVerify) {
        fail("--keep-transcripts supports --n <= 16");
      }
      break;
    case Game::kBalance:
      if (c.rounds < 1) fail("--rounds must be at least 1");
      break;
    case Game::kOffline:
      if (c.graph.empty() && (c.n < 1 || c.n > kMaxOptEnumeration)) {
        fail("offline needs --graph or --n in [1, 20]");
      }
      break;
    case Game::kVerify:
      if (c.graph.empty()) fail("verify needs a graph file");
      break;
  }
}

ExperimentConfig ParseConfig(std::span<const std::string> args) {
  CLI::App app("Online unconstrained submodular maximization simulator",
               "usm-sim");
  app.require_subcommand(1);
  RawOptions raw;

  struct Sub {
    CLI::App* app;
    Game game;
    OptionHandles handles;
  };
  std::vector<Sub> subs;
  auto add_common = [&raw](CLI::App* sub, OptionHandles& h) {
    h.by_key["subroutine"] = sub->add_option(
        "--subroutine", raw.subroutine,
        "balancer, mw, uniform, always-yes, always-no (prefix doubling- for "
        "unknown horizon)");
    h.by_key["adversary"] =
        sub->add_option("--adversary", raw.adversary, "adversary descriptor");
    h.by_key["alpha"] =
        sub->add_option("--alpha", raw.alpha, "regret multiplier in (0, 1]");
    h.by_key["trials"] = sub->add_option("--trials", raw.trials, "trials");
    h.by_key["seed"] = sub->add_option("--seed", raw.seed, "master seed");
    h.by_key["output"] =
        sub->add_option("--output", raw.output, "output path (default stdout)");
    h.by_key["format"] = sub->add_option("--format", raw.format, "csv or json");
    h.by_key["workers"] =
        sub->add_option("--workers", raw.workers, "parallel trial workers");
    h.by_key["summary-only"] =
        sub->add_flag("--summary-only", raw.summary_only, "omit rows in json");
    h.by_key["config"] =
        sub->add_option("--config", raw.config_file, "JSON config file");
  };

  {
    Sub s{app.add_subcommand("simulate-usm", "play the online USM game"),
          Game::kUsm, {}};
    s.handles.by_key["n"] = s.app->add_option("--n", raw.n, "ground set size");
    s.handles.by_key["rounds"] =
        s.app->add_option("--rounds", raw.rounds, "horizon T");
    add_common(s.app, s.handles);
    s.handles.by_key["keep-transcripts"] = s.app->add_flag(
        "--keep-transcripts", raw.keep_transcripts, "retain round transcripts");
    s.handles.by_key["no-opt"] =
        s.app->add_flag("--no-opt", raw.no_opt, "skip the hindsight optimum");
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("simulate-balance", "play the balance game"),
          Game::kBalance, {}};
    s.handles.by_key["rounds"] =
        s.app->add_option("--rounds", raw.rounds, "horizon T");
    add_common(s.app, s.handles);
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("offline", "offline baselines on one instance"),
          Game::kOffline, {}};
    s.handles.by_key["graph"] =
        s.app->add_option("--graph", raw.graph, "graph file");
    s.handles.by_key["n"] =
        s.app->add_option("--n", raw.n, "random instance size");
    add_common(s.app, s.handles);
    subs.push_back(std::move(s));
  }
  {
    Sub s{app.add_subcommand("verify", "check a graph's cut function"),
          Game::kVerify, {}};
    s.handles.by_key["graph"] =
        s.app->add_option("graph,--graph", raw.graph, "graph file");
    s.handles.by_key["samples"] = s.app->add_option(
        "--samples", raw.samples, "sampled mode with this many triples");
    s.handles.by_key["seed"] = s.app->add_option("--seed", raw.seed, "seed");
    s.handles.by_key["config"] =
        s.app->add_option("--config", raw.config_file, "JSON config file");
    subs.push_back(std::move(s));
  }

  std::vector<std::string> owned = {"usm-sim"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : owned) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const Sub& s : subs) {
      if (s.app->parsed()) target = s.app;
    }
    throw HelpRequested(target->help());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }

  const Sub* chosen = nullptr;
  for (const Sub& s : subs) {
    if (s.app->parsed()) chosen = &s;
  }
  std::set<std::string> from_file;
  if (!raw.config_file.empty()) {
    from_file = ApplyConfigFile(raw.config_file, chosen->handles, raw);
  }
  auto given = [&](const char* key) {
    return chosen->handles.Given(key) || from_file.contains(key);
  };

  ExperimentConfig c;
  c.game = chosen->game;
  if ((c.game == Game::kUsm || c.game == Game::kBalance) && !given("rounds")) {
    throw Error(ErrorKind::kConfig, "missing required flag --rounds");
  }
  if (c.game == Game::kUsm && !given("n")) {
    throw Error(ErrorKind::kConfig, "missing required flag --n");
  }
  c.n = raw.n;
  c.rounds = raw.rounds;
  c.subroutine = raw.subroutine.empty() ? "balancer" : raw.subroutine;
  c.trials = raw.trials;
  c.seed = raw.seed;
  c.output = raw.output;
  c.format = raw.format.empty() ? OutputFormat::kCsv : ParseFormat(raw.format);
  c.workers = raw.workers;
  c.keep_transcripts = raw.keep_transcripts;
  c.summary_only = raw.summary_only;
  c.track_opt = !raw.no_opt;
  c.graph = raw.graph;
  c.samples = raw.samples;
  c.alpha = given("alpha") ? raw.alpha : (c.game == Game::kBalance ? 1.0 : 0.5);
  if (raw.adversary.empty()) {
    c.adversary = c.game == Game::kBalance ? "pattern:URL" : "cycle:4";
  } else {
    c.adversary = raw.adversary;
  }
  ValidateConfig(c);

  // Surface descriptor mistakes as configuration errors before running.
  if (c.game == Game::kBalance) {
    BalanceAdversary::FromDescriptor(c.adversary);
  } else if (c.game == Game::kUsm) {
    try {
      UsmAdversary::FromDescriptor(c.adversary, c.n, c.seed);
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, std::string("--adversary: ") + e.what());
    }
  }
  return c;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  if (config.game != Game::kUsm && config.game != Game::kBalance) {
    throw Error(ErrorKind::kConfig, "RunExperiment handles usm and balance");
  }
  ValidateConfig(config);
  std::vector<TrialOutput> trials = RunTrials(config);

  ExperimentResult result;
  ExperimentSummary& s = result.summary;
  s.checkpoints = RegretCheckpoints(config.rounds);
  s.mean_regret_at.assign(s.checkpoints.size(), 0.0);
  if (config.game == Game::kUsm) s.round_query_budget = RoundQueryBudget(config.n);
  result.rows.reserve(static_cast<std::size_t>(config.rounds) * config.trials);
  for (TrialOutput& trial : trials) {
    s.final_regret.push_back(trial.rows.back().alpha_regret);
    s.total_queries += trial.rows.back().queries;
    s.max_round_queries = std::max(s.max_round_queries, trial.max_round_queries);
    for (std::size_t k = 0; k < s.checkpoints.size(); ++k) {
      s.mean_regret_at[k] +=
          trial.rows[static_cast<std::size_t>(s.checkpoints[k] - 1)].alpha_regret /
          static_cast<double>(config.trials);
    }
    result.rows.insert(result.rows.end(), trial.rows.begin(), trial.rows.end());
    if (config.keep_transcripts && config.game == Game::kUsm) {
      result.transcripts.push_back(std::move(trial.transcripts));
      result.adversaries.push_back(trial.adversary);
    }
  }
  s.mean_regret = Mean(s.final_regret);
  s.stddev_regret = SampleStddev(s.final_regret);
  std::vector<double> ts(s.checkpoints.begin(), s.checkpoints.end());
  s.growth_exponent = FitGrowthExponent(ts, s.mean_regret_at);
  return result;
}

std::string FormatCsv(std::span<const ResultRow> rows) {
  std::string out = "trial,t,reward,cum_reward,cum_opt,alpha_regret,queries\n";
  for (const ResultRow& r : rows) {
    out += std::to_string(r.trial);
    out += ',';
    out += std::to_string(r.t);
    out += ',';
    out += FormatNumber(r.reward);
    out += ',';
    out += FormatNumber(r.cum_reward);
    out += ',';
    if (std::isfinite(r.cum_opt)) out += FormatNumber(r.cum_opt);
    out += ',';
    if (std::isfinite(r.alpha_regret)) out += FormatNumber(r.alpha_regret);
    out += ',';
    out += std::to_string(r.queries);
    out += '\n';
  }
  return out;
}

std::string FormatJson(const ExperimentConfig& config,
                       const ExperimentResult& result, bool summary_only) {
  json j;
  j["config"] = ConfigJson(config);
  if (!summary_only) {
    json rows = json::array();
    for (const ResultRow& r : result.rows) {
      rows.push_back({{"trial", r.trial},
                      {"t", r.t},
                      {"reward", r.reward},
                      {"cum_reward", r.cum_reward},
                      {"cum_opt", NumberOrNull(r.cum_opt)},
                      {"alpha_regret", NumberOrNull(r.alpha_regret)},
                      {"queries", r.queries}});
    }
    j["rows"] = std::move(rows);
  }
  const ExperimentSummary& s = result.summary;
  json final_regret = json::array();
  for (double v : s.final_regret) final_regret.push_back(NumberOrNull(v));
  json at = json::array();
  for (double v : s.mean_regret_at) at.push_back(NumberOrNull(v));
  j["summary"] = {{"final_regret", final_regret},
                  {"mean_regret", NumberOrNull(s.mean_regret)},
                  {"stddev_regret", NumberOrNull(s.stddev_regret)},
                  {"total_queries", s.total_queries},
                  {"max_round_queries", s.max_round_queries},
                  {"round_query_budget", s.round_query_budget},
                  {"checkpoints", s.checkpoints},
                  {"mean_regret_at", at},
                  {"growth_exponent", NumberOrNull(s.growth_exponent)}};
  return j.dump(2) + "\n";
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot move results into " + path);
  }
}

std::string WriteResults(const ExperimentConfig& config,
                         const ExperimentResult& result) {
  std::string text = config.format == OutputFormat::kCsv
                         ? FormatCsv(result.rows)
                         : FormatJson(config, result, config.summary_only);
  if (config.output.empty()) return text;
  WriteFileAtomic(config.output, text);
  return {};
}

OfflineReport RunOffline(const ExperimentConfig& config) {
  const DirectedGraph g =
      config.graph.empty()
          ? RandomDigraph(config.n, 0.5, 0.0, 1.0, config.seed)
          : LoadGraph(config.graph);
  const SubmodularOracle f = Normalize(g);
  OfflineReport r;
  r.n = f.n();
  r.opt = BruteForceOpt(f);
  r.deterministic = DetDoubleGreedy(f);
  r.randomized = RandDoubleGreedyTrials(f, config.trials,
                                        DeriveSeed(config.seed, 1));
  r.uniform_expectation = UniformRandomValue(f);
  return r;
}

std::string FormatOffline(const OfflineReport& r, OutputFormat format) {
  struct Line {
    const char* name;
    const OfflineResult* result;
  };
  const Line lines[] = {{"brute-force-opt", &r.opt},
                        {"det-double-greedy", &r.deterministic},
                        {"rand-double-greedy", &r.randomized}};
  if (format == OutputFormat::kJson) {
    json j;
    j["n"] = r.n;
    for (const Line& l : lines) {
      j[l.name] = {{"chosen", l.result->chosen.Elements()},
                   {"value", l.result->value},
                   {"trials", l.result->trials},
                   {"mean", l.result->mean},
                   {"stddev", l.result->stddev},
                   {"queries", l.result->queries}};
    }
    j["uniform-random"] = {{"expected_value", r.uniform_expectation}};
    return j.dump(2) + "\n";
  }
  std::string out = "algorithm,value,chosen,mean,stddev,trials\n";
  for (const Line& l : lines) {
    std::string chosen = l.result->chosen.ToString();
    std::replace(chosen.begin(), chosen.end(), ',', ' ');
    out += std::string(l.name) + ',' + FormatNumber(l.result->value) + ',' +
           chosen + ',' + FormatNumber(l.result->mean) + ',' +
           FormatNumber(l.result->stddev) + ',' +
           std::to_string(l.result->trials) + '\n';
  }
  out += "uniform-random," + FormatNumber(r.uniform_expectation) + ",,,,\n";
  return out;
}

namespace {

int RunVerifyCommand(const ExperimentConfig& c, std::ostream& out) {
  const SubmodularOracle f = Normalize(LoadGraph(c.graph));
  VerifyOptions options;
  if (c.samples > 0) {
    options.mode = VerifyOptions::Mode::kSampled;
    options.samples = c.samples;
    options.seed = c.seed;
  }
  const SubmodularityReport report = VerifySubmodularity(f, options);
  if (report.pass) {
    out << "pass: " << report.triples_checked << " triples checked on n="
        << f.n() << "\n";
    return 0;
  }
  const SubmodularityWitness& w = *report.witness;
  out << "violation: S=" << w.larger.ToString()
      << " T=" << w.smaller.ToString() << " i=" << w.element
      << " marginal(S)=" << FormatNumber(w.marginal_larger)
      << " marginal(T)=" << FormatNumber(w.marginal_smaller) << "\n";
  return 3;
}

void Emit(const ExperimentConfig& c, const std::string& text,
          std::ostream& out) {
  if (c.output.empty()) {
    out << text;
  } else {
    WriteFileAtomic(c.output, text);
  }
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err) {
  ExperimentConfig config;
  try {
    config = ParseConfig(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return 0;
  } catch (const Error& e) {
    err << "usm-sim: " << e.what() << "\n";
    return 1;
  }
  try {
    switch (config.game) {
      case Game::kVerify:
        return RunVerifyCommand(config, out);
      case Game::kOffline:
        Emit(config, FormatOffline(RunOffline(config), config.format), out);
        return 0;
      case Game::kUsm:
      case Game::kBalance: {
        const ExperimentResult result = RunExperiment(config);
        out << WriteResults(config, result);
        return 0;
      }
    }
  } catch (const Error& e) {
    err << "usm-sim: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == ErrorKind::kConfig ? 1 : 2;
  } catch (const std::exception& e) {
    err << "usm-sim: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ousm
