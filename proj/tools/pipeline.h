/*
 * Copyright 2026 The shoprank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SHOPRANK_TOOLS_PIPELINE_H_
#define SHOPRANK_TOOLS_PIPELINE_H_

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>

namespace shoprank::cli {

enum class ScorerKind { kLexical, kRemote };

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitScorerUnavailable = 2;

struct PipelineConfig {
  std::filesystem::path products;
  std::filesystem::path judgments;
  std::filesystem::path task2_judgments;
  std::filesystem::path out_dir = ".";
  // Input of `evaluate`; defaults to <out_dir>/run.trec.
  std::filesystem::path run;
  // Fixture of `check-server`.
  std::filesystem::path conformance;

  ScorerKind scorer = ScorerKind::kLexical;
  std::string endpoint;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  std::size_t retries = 3;
  std::size_t timeout_ms = 30000;
  std::size_t max_units = 512;
  std::size_t k = 20;
  std::string gains;  // "E=..,S=..,C=..,I=.." overrides
  bool skip_zero = false;
  std::string run_tag = "shoprank";
  std::string locale;  // empty: every locale
};

// Output file names inside out_dir.
inline constexpr const char* kRunFileName = "run.trec";
inline constexpr const char* kSubmissionFileName = "submission.csv";
inline constexpr const char* kReportFileName = "eval.json";
inline constexpr const char* kTrainFileName = "train.jsonl";

// Each command writes machine-readable output to `out` or to files and logs
// to `log`. They return one of the exit codes above.
int cmd_validate(const PipelineConfig& config, std::ostream& out,
                 std::ostream& log);
int cmd_rank(const PipelineConfig& config, std::ostream& out,
             std::ostream& log);
int cmd_evaluate(const PipelineConfig& config, std::ostream& out,
                 std::ostream& log);
int cmd_export_train(const PipelineConfig& config, std::ostream& out,
                     std::ostream& log);
int cmd_check_server(const PipelineConfig& config, std::ostream& out,
                     std::ostream& log);

// Parses argv (flags, optional --config file, SHOPRANK_ENDPOINT) and runs the
// selected subcommand.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& log);

}  // namespace shoprank::cli

#endif  // SHOPRANK_TOOLS_PIPELINE_H_
