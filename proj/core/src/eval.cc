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

#include "shoprank/eval.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "shoprank/error.h"

namespace shoprank {

double GainMap::gain(EsciLabel label) const {
  switch (label) {
    case EsciLabel::kExact:
      return exact;
    case EsciLabel::kSubstitute:
      return substitute;
    case EsciLabel::kComplement:
      return complement;
    case EsciLabel::kIrrelevant:
      return irrelevant;
  }
  return 0.0;
}

void GainMap::validate() const {
  const bool ordered = exact >= substitute && substitute >= complement &&
                       complement >= irrelevant && irrelevant >= 0.0;
  if (!ordered || !std::isfinite(exact)) {
    throw Error(ErrorKind::kInvalidGainMap,
                "need E >= S >= C >= I >= 0, got E=" + std::to_string(exact) +
                    " S=" + std::to_string(substitute) +
                    " C=" + std::to_string(complement) +
                    " I=" + std::to_string(irrelevant));
  }
}

GainMap parse_gain_overrides(std::string_view text, GainMap base) {
  GainMap out = base;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) {
      if (comma == text.size()) break;
      continue;
    }
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::kInvalidArgument,
                  "gain override '" + std::string(item) + "' lacks '='");
    }
    const auto label = parse_esci_label(item.substr(0, eq));
    if (!label) {
      throw Error(ErrorKind::kInvalidArgument,
                  "unknown label in gain override '" + std::string(item) + "'");
    }
    const std::string_view number = item.substr(eq + 1);
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || ptr != number.data() + number.size()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "bad gain value in '" + std::string(item) + "'");
    }
    switch (*label) {
      case EsciLabel::kExact:
        out.exact = value;
        break;
      case EsciLabel::kSubstitute:
        out.substitute = value;
        break;
      case EsciLabel::kComplement:
        out.complement = value;
        break;
      case EsciLabel::kIrrelevant:
        out.irrelevant = value;
        break;
    }
    if (comma == text.size()) break;
  }
  out.validate();
  return out;
}

double dcg(std::span<const double> gains_in_rank_order, std::size_t k) {
  const std::size_t n = std::min(k, gains_in_rank_order.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gains_in_rank_order[i];
    if (g < 0.0) {
      throw Error(ErrorKind::kNegativeGain,
                  "gain " + std::to_string(g) + " at rank " +
                      std::to_string(i + 1));
    }
    sum += g / std::log2(static_cast<double>(i) + 2.0);
  }
  return sum;
}

double ideal_dcg(const QueryJudgments& judgments, const GainMap& gain_map,
                 std::size_t k) {
  std::vector<double> gains;
  gains.reserve(judgments.judgments.size());
  for (const auto& j : judgments.judgments) {
    gains.push_back(gain_map.gain(j.label));
  }
  std::sort(gains.begin(), gains.end(), std::greater<>());
  return dcg(gains, k);
}

double ndcg_at_k(const Ranking& ranking, const QueryJudgments& judgments,
                 const GainMap& gain_map, std::size_t k) {
  if (ranking.query_id != judgments.query_id) {
    throw Error(ErrorKind::kQueryIdMismatch,
                "ranking " + ranking.query_id + " vs judgments " +
                    judgments.query_id);
  }
  const double ideal = ideal_dcg(judgments, gain_map, k);
  if (ideal == 0.0) return 0.0;

  std::unordered_map<std::string_view, double> gain_of;
  for (const auto& j : judgments.judgments) {
    gain_of.emplace(j.product_id, gain_map.gain(j.label));
  }
  std::vector<double> realized;
  const std::size_t n = std::min(k, ranking.items.size());
  realized.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = gain_of.find(ranking.items[i].product_id);
    realized.push_back(it == gain_of.end() ? 0.0 : it->second);
  }
  return dcg(realized, k) / ideal;
}

EvalReport evaluate_run(const RunFile& run,
                        std::span<const QueryJudgments> judgments,
                        const GainMap& gain_map, const EvalOptions& options) {
  if (options.k == 0) {
    throw Error(ErrorKind::kInvalidArgument, "k must be positive");
  }
  gain_map.validate();
  std::unordered_map<std::string_view, const QueryJudgments*> by_id;
  for (const auto& q : judgments) by_id.emplace(q.query_id, &q);

  EvalReport report;
  report.k = options.k;
  report.gain_map = gain_map;
  for (const auto& [query_id, ranking] : run.rankings) {
    auto it = by_id.find(query_id);
    if (it == by_id.end()) {
      report.missing_judgments.push_back(query_id);
      continue;
    }
    if (options.skip_zero && ideal_dcg(*it->second, gain_map, options.k) == 0.0) {
      report.zero_ideal.push_back(query_id);
      continue;
    }
    report.per_query.emplace(query_id,
                             ndcg_at_k(ranking, *it->second, gain_map,
                                       options.k));
  }
  double sum = 0.0;
  for (const auto& [query_id, value] : report.per_query) sum += value;
  report.macro_mean =
      report.per_query.empty()
          ? 0.0
          : sum / static_cast<double>(report.per_query.size());
  report.skipped = report.zero_ideal.size() + report.missing_judgments.size();
  return report;
}

std::string to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["k"] = report.k;
  j["gain_map"] = {{"exact", report.gain_map.exact},
                   {"substitute", report.gain_map.substitute},
                   {"complement", report.gain_map.complement},
                   {"irrelevant", report.gain_map.irrelevant}};
  auto& per_query = j["per_query"] = nlohmann::ordered_json::object();
  for (const auto& [query_id, value] : report.per_query) {
    per_query[query_id] = value;
  }
  j["macro_mean"] = report.macro_mean;
  j["skipped"] = report.skipped;
  return j.dump(2) + "\n";
}

}  // namespace shoprank
