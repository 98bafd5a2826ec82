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

#include "shoprank/prompt.h"

#include <cstdint>
#include <vector>

#include "shoprank/error.h"

namespace shoprank {
namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_cjk(std::uint32_t cp) {
  return (cp >= 0x3040 && cp <= 0x30FF) ||  // hiragana, katakana
         (cp >= 0x3400 && cp <= 0x4DBF) ||  // CJK extension A
         (cp >= 0x4E00 && cp <= 0x9FFF) ||  // CJK unified ideographs
         (cp >= 0xF900 && cp <= 0xFAFF) ||  // CJK compatibility ideographs
         (cp >= 0xAC00 && cp <= 0xD7AF) ||  // hangul syllables
         (cp >= 0xFF66 && cp <= 0xFF9F);    // halfwidth katakana
}

// Lenient UTF-8 decode of the sequence at s[i]; advances i. Invalid bytes
// decode to U+FFFD one byte at a time.
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  std::uint32_t cp = 0;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

}  // namespace

std::size_t whitespace_length_fn(std::string_view text) {
  std::size_t runs = 0;
  bool in_run = false;
  for (char c : text) {
    const bool space = is_ascii_space(c);
    if (!space && !in_run) ++runs;
    in_run = !space;
  }
  return runs;
}

std::size_t default_length_fn(std::string_view text) {
  std::size_t cjk = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (is_cjk(next_codepoint(text, i))) ++cjk;
  }
  return whitespace_length_fn(text) + (cjk + 3) / 4;
}

std::string render_template(std::string_view query_text,
                            std::string_view document_text) {
  std::string out;
  out.reserve(kQueryMarker.size() + query_text.size() +
              kDocumentMarker.size() + document_text.size() +
              kRelevantMarker.size());
  out += kQueryMarker;
  out += query_text;
  out += kDocumentMarker;
  out += document_text;
  out += kRelevantMarker;
  return out;
}

Prompt render(std::string_view query_id, std::string_view query_text,
              const DocumentText& doc, const LengthBudget& budget) {
  if (budget.max_units == 0) {
    throw Error(ErrorKind::kInvalidArgument, "max_units must be positive");
  }
  const LengthFn& length =
      budget.length_fn ? budget.length_fn : LengthFn(default_length_fn);
  const std::string_view full = doc.text;

  Prompt prompt;
  prompt.query_id = std::string(query_id);
  prompt.product_id = doc.product_id;
  prompt.query_text = std::string(query_text);

  auto fits = [&](std::size_t cut) {
    return length(render_template(query_text, full.substr(0, cut))) <=
           budget.max_units;
  };

  std::size_t keep = full.size();
  if (!fits(keep)) {
    // Candidate cuts: 0 and every end of word.
    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 1; i < full.size(); ++i) {
      if (is_ascii_space(full[i]) && !is_ascii_space(full[i - 1])) {
        cuts.push_back(i);
      }
    }
    // Largest fitting cut, assuming fit is monotone in the cut index.
    std::size_t lo = 0;
    std::size_t hi = cuts.size();
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (fits(cuts[mid])) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    keep = cuts[lo];
  }

  prompt.document_text = std::string(full.substr(0, keep));
  prompt.text = render_template(query_text, prompt.document_text);
  prompt.truncated = keep != full.size() ||
                     length(prompt.text) > budget.max_units;
  return prompt;
}

}  // namespace shoprank
