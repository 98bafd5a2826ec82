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

#ifndef SHOPRANK_DOCBUILDER_H_
#define SHOPRANK_DOCBUILDER_H_

#include <string>
#include <string_view>

#include "shoprank/catalog.h"

namespace shoprank {

// The document side of a prompt: plain text, single-spaced, trimmed.
struct DocumentText {
  std::string product_id;
  std::string text;

  friend bool operator==(const DocumentText&, const DocumentText&) = default;
};

// Removes markup from product text:
//  - tags are dropped; p, br, li, div and tr (open or close) become a space;
//  - script and style elements are dropped together with their content;
//  - &amp; &lt; &gt; &quot; &#39; &nbsp; are decoded, as are numeric
//    references in the printable ASCII range (others are left as-is);
//  - ASCII whitespace runs collapse to one space and the ends are trimmed.
// A '<' that does not open a well-formed tag is kept literally. The rules are
// applied until the text stops changing, so decoded "&lt;b&gt;" is stripped
// too and the function is idempotent.
std::string strip_html(std::string_view raw);

// Collapses ASCII whitespace runs to a single space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// title, description, bullet points, brand, color name, in that order, each
// cleaned separately and joined by single spaces. Absent or empty fields are
// skipped.
DocumentText build_document(const Product& product);

}  // namespace shoprank

#endif  // SHOPRANK_DOCBUILDER_H_
