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

#ifndef SHOPRANK_EVAL_H_
#define SHOPRANK_EVAL_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoprank/catalog.h"
#include "shoprank/rank.h"

namespace shoprank {

// Gain per ESCI label.
struct GainMap {
  double exact = 1.0;
  double substitute = 0.1;
  double complement = 0.01;
  double irrelevant = 0.0;

  double gain(EsciLabel label) const;

  // Throws Error(kInvalidGainMap) unless
  // exact >= substitute >= complement >= irrelevant >= 0.
  void validate() const;

  friend bool operator==(const GainMap&, const GainMap&) = default;
};

// Applies "E=1,S=0.1,C=0.01,I=0"-style overrides (any subset, keys E/S/C/I
// or full label names, case-insensitive) on top of `base`. Throws
// kInvalidArgument on syntax errors; the result is validated.
GainMap parse_gain_overrides(std::string_view text, GainMap base = {});

// Sum of gains[i] / log2(i + 2) over the first min(k, n) entries (0-based
// i). Throws kNegativeGain.
double dcg(std::span<const double> gains_in_rank_order, std::size_t k);

// DCG of the judged gains sorted descending.
double ideal_dcg(const QueryJudgments& judgments, const GainMap& gain_map,
                 std::size_t k);

// DCG of the ranking over IDCG. Unjudged ranked products get gain 0; judged
// products missing from the ranking only enter the ideal. Returns 0 when the
// ideal DCG is 0. Throws kQueryIdMismatch.
double ndcg_at_k(const Ranking& ranking, const QueryJudgments& judgments,
                 const GainMap& gain_map, std::size_t k);

struct EvalOptions {
  std::size_t k = 20;
  // Drop queries whose ideal DCG is 0 from the average instead of counting
  // them as 0.
  bool skip_zero = false;
};

struct EvalReport {
  std::size_t k = 20;
  GainMap gain_map;
  std::map<std::string, double> per_query;
  double macro_mean = 0.0;
  // zero_ideal.size() + missing_judgments.size().
  std::size_t skipped = 0;
  std::vector<std::string> zero_ideal;
  // Run queries without judgments (MissingJudgments); excluded.
  std::vector<std::string> missing_judgments;
};

EvalReport evaluate_run(const RunFile& run,
                        std::span<const QueryJudgments> judgments,
                        const GainMap& gain_map, const EvalOptions& options);

// {"k":..,"gain_map":{...},"per_query":{...},"macro_mean":..,"skipped":..}
std::string to_json(const EvalReport& report);

}  // namespace shoprank

#endif  // SHOPRANK_EVAL_H_
