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

#include "shoprank/scorer.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "shoprank/error.h"

namespace shoprank {
namespace {

std::vector<std::string> lowercase_terms(std::string_view text) {
  std::vector<std::string> terms;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      if (!current.empty()) terms.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    current.push_back(c);
  }
  if (!current.empty()) terms.push_back(std::move(current));
  return terms;
}

}  // namespace

RelevanceScore softmax_pos(TokenLogits logits) {
  if (!std::isfinite(logits.logit_pos) || !std::isfinite(logits.logit_neg)) {
    throw Error(ErrorKind::kNonFiniteLogit,
                "logit_pos=" + std::to_string(logits.logit_pos) +
                    " logit_neg=" + std::to_string(logits.logit_neg));
  }
  const double m = std::max(logits.logit_pos, logits.logit_neg);
  const double pos = std::exp(logits.logit_pos - m);
  const double neg = std::exp(logits.logit_neg - m);
  return RelevanceScore{pos / (pos + neg)};
}

TokenLogits lexical_logits(std::string_view query_text,
                           std::string_view document_text) {
  const auto doc_terms = lowercase_terms(document_text);
  const std::unordered_set<std::string> doc_set(doc_terms.begin(),
                                                doc_terms.end());
  std::unordered_set<std::string> seen;
  double overlap = 0;
  double miss = 0;
  for (auto& term : lowercase_terms(query_text)) {
    if (!seen.insert(term).second) continue;
    if (doc_set.contains(term)) {
      ++overlap;
    } else {
      ++miss;
    }
  }
  return TokenLogits{std::log1p(overlap), std::log1p(miss)};
}

std::vector<TokenLogits> LexicalScorer::logits(
    std::span<const Prompt> prompts) {
  std::vector<TokenLogits> out;
  out.reserve(prompts.size());
  for (const auto& p : prompts) {
    out.push_back(lexical_logits(p.query_text, p.document_text));
  }
  return out;
}

std::vector<ScoredPair> score_batch(Scorer& scorer,
                                    std::span<const Prompt> prompts) {
  if (prompts.empty()) {
    throw Error(ErrorKind::kEmptyInput, "score_batch needs at least one prompt");
  }
  const auto logits = scorer.logits(prompts);
  if (logits.size() != prompts.size()) {
    throw Error(ErrorKind::kProtocolError,
                "scorer '" + scorer.tag() + "' returned " +
                    std::to_string(logits.size()) + " results for " +
                    std::to_string(prompts.size()) + " prompts");
  }
  const std::string tag = scorer.tag();
  std::vector<ScoredPair> out;
  out.reserve(prompts.size());
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    RelevanceScore score;
    try {
      score = softmax_pos(logits[i]);
    } catch (const Error& e) {
      throw Error(ErrorKind::kNonFiniteLogit,
                  "query_id=" + prompts[i].query_id +
                      " product_id=" + prompts[i].product_id + ": " +
                      e.detail());
    }
    out.push_back(
        ScoredPair{prompts[i].query_id, prompts[i].product_id, score, tag});
  }
  return out;
}

}  // namespace shoprank
