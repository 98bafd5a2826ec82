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

#ifndef SHOPRANK_SCORER_H_
#define SHOPRANK_SCORER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoprank/prompt.h"

namespace shoprank {

// Raw logits of the positive ("true"/"yes") and negative ("false"/"no")
// relevance tokens.
struct TokenLogits {
  double logit_pos = 0.0;
  double logit_neg = 0.0;

  friend bool operator==(const TokenLogits&, const TokenLogits&) = default;
};

// Probability of the positive token, in [0, 1].
struct RelevanceScore {
  double value = 0.0;

  friend auto operator<=>(const RelevanceScore&, const RelevanceScore&) =
      default;
};

struct ScoredPair {
  std::string query_id;
  std::string product_id;
  RelevanceScore score;
  std::string scorer_tag;

  friend bool operator==(const ScoredPair&, const ScoredPair&) = default;
};

// Two-way softmax over the token logits, taking the positive side. Computed
// after subtracting the larger logit so extreme values cannot overflow.
// Throws Error(kNonFiniteLogit) for NaN or infinite input.
RelevanceScore softmax_pos(TokenLogits logits);

// A scorer maps prompts to token logits. Implementations must be pure per
// prompt text within one session: the same text yields the same logits.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual std::string tag() const = 0;
  // Returns exactly one entry per prompt, in input order.
  virtual std::vector<TokenLogits> logits(std::span<const Prompt> prompts) = 0;
};

// Lowercased (ASCII), whitespace-split, deduplicated query terms; overlap is
// how many occur in the document's term set, miss is the rest. Logits are
// ln(1 + overlap) and ln(1 + miss).
TokenLogits lexical_logits(std::string_view query_text,
                           std::string_view document_text);

class LexicalScorer final : public Scorer {
 public:
  std::string tag() const override { return "lexical"; }
  std::vector<TokenLogits> logits(std::span<const Prompt> prompts) override;
};

// Scores every prompt. Throws kEmptyInput for an empty list, kProtocolError if
// the scorer returns the wrong number of logits, and kNonFiniteLogit naming
// the offending (query_id, product_id). Scorer errors propagate unchanged.
std::vector<ScoredPair> score_batch(Scorer& scorer,
                                    std::span<const Prompt> prompts);

}  // namespace shoprank

#endif  // SHOPRANK_SCORER_H_
