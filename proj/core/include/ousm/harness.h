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

#ifndef OUSM_HARNESS_H_
#define OUSM_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ousm/adversaries.h"
#include "ousm/framework.h"
#include "ousm/offline.h"
#include "ousm/submodular.h"

namespace ousm {

enum class Game { kUsm, kBalance, kOffline, kVerify };
enum class OutputFormat { kCsv, kJson };

std::string_view GameName(Game game);

struct ExperimentConfig {
  Game game = Game::kUsm;
  int n = 0;
  std::int64_t rounds = 0;
  std::string subroutine = "balancer";
  std::string adversary;
  double alpha = 0.5;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::kCsv;
  int workers = 1;
  bool keep_transcripts = false;
  bool summary_only = false;
  bool track_opt = true;
  std::string graph;            // offline / verify input
  std::uint64_t samples = 0;    // verify: sampled mode when > 0
};

// Thrown by ParseConfig for --help; carries the usage text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& text)
      : std::runtime_error(text) {}
};

// Parses "<subcommand> [flags]". Subcommands: simulate-usm,
// simulate-balance, offline, verify. A JSON object given with --config
// supplies any flag not on the command line (keys are flag names without
// dashes); unknown keys are rejected. Throws Error(kConfig) on invalid or
// inconsistent settings.
ExperimentConfig ParseConfig(std::span<const std::string> args);

// Rejects impossible settings; ParseConfig calls it.
void ValidateConfig(const ExperimentConfig& config);

struct ResultRow {
  std::uint64_t trial = 0;
  std::int64_t t = 0;
  double reward = 0.0;
  double cum_reward = 0.0;
  double cum_opt = 0.0;  // NaN when unavailable
  double alpha_regret = 0.0;
  std::uint64_t queries = 0;
};

struct ExperimentSummary {
  std::vector<double> final_regret;  // per trial
  double mean_regret = 0.0;
  double stddev_regret = 0.0;
  std::uint64_t total_queries = 0;
  std::uint64_t max_round_queries = 0;
  std::uint64_t round_query_budget = 0;  // 4n + 2 for usm, 0 otherwise
  std::vector<std::int64_t> checkpoints;
  std::vector<double> mean_regret_at;  // mean over trials per checkpoint
  double growth_exponent = 0.0;        // NaN when not fittable
};

struct ExperimentResult {
  std::vector<ResultRow> rows;  // ordered by (trial, t)
  ExperimentSummary summary;
  // Per trial, when keep_transcripts is set for the usm game.
  std::vector<std::vector<RecordedRound>> transcripts;
  // Own the oracles referenced by `transcripts`.
  std::vector<std::shared_ptr<const UsmAdversary>> adversaries;
};

// Runs the usm or balance game. Trial k draws its coins from a seed derived
// from (seed, k); oblivious adversaries are seeded from `seed` alone, so all
// trials face the same input. Output does not depend on `workers`.
ExperimentResult RunExperiment(const ExperimentConfig& config);

std::string FormatCsv(std::span<const ResultRow> rows);
std::string FormatJson(const ExperimentConfig& config,
                       const ExperimentResult& result, bool summary_only);

// Writes to a temporary file next to `path`, then renames it into place.
// Throws Error(kIo) on failure.
void WriteFileAtomic(const std::string& path, const std::string& contents);

// Serializes per config.format (and summary_only) to config.output, or
// returns the text when config.output is empty.
std::string WriteResults(const ExperimentConfig& config,
                         const ExperimentResult& result);

struct OfflineReport {
  int n = 0;
  OfflineResult opt;
  OfflineResult deterministic;
  OfflineResult randomized;
  double uniform_expectation = 0.0;
};

// Loads config.graph (or draws a random cut instance on config.n vertices
// from config.seed) and runs every offline algorithm.
OfflineReport RunOffline(const ExperimentConfig& config);
std::string FormatOffline(const OfflineReport& report, OutputFormat format);

// Entry point of the command-line tool. Returns the process exit code:
// 0 success, 1 configuration error, 2 runtime error, 3 verification failure.
int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace ousm

#endif  // OUSM_HARNESS_H_
