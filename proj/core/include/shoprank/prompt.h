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

#ifndef SHOPRANK_PROMPT_H_
#define SHOPRANK_PROMPT_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "shoprank/docbuilder.h"

namespace shoprank {

inline constexpr std::string_view kQueryMarker = "Query: ";
inline constexpr std::string_view kDocumentMarker = " Document: ";
inline constexpr std::string_view kRelevantMarker = " Relevant:";

// Maps text to a unit count. Must return 0 for "" and must not decrease when
// text is appended.
using LengthFn = std::function<std::size_t(std::string_view)>;

// Whitespace-delimited runs plus ceil(n / 4) where n is the number of
// CJK-range codepoints (kana, CJK ideographs, hangul). A cheap stand-in for a
// multilingual subword tokenizer.
std::size_t default_length_fn(std::string_view text);

// Plain count of whitespace-delimited runs.
std::size_t whitespace_length_fn(std::string_view text);

struct LengthBudget {
  std::size_t max_units = 512;
  LengthFn length_fn = default_length_fn;
};

struct Prompt {
  std::string query_id;
  std::string product_id;
  std::string query_text;
  // The possibly truncated document that was rendered into `text`.
  std::string document_text;
  std::string text;
  bool truncated = false;

  friend bool operator==(const Prompt&, const Prompt&) = default;
};

std::string render_template(std::string_view query_text,
                            std::string_view document_text);

// Renders "Query: q Document: d Relevant:", keeping the longest whole-word
// head of the document that fits the budget. The query and template are
// never cut; when even an empty document does not fit, that prompt is
// returned with truncated set.
Prompt render(std::string_view query_id, std::string_view query_text,
              const DocumentText& doc, const LengthBudget& budget);

}  // namespace shoprank

#endif  // SHOPRANK_PROMPT_H_
