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

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "oracles.h"
#include "shoprank/error.h"

namespace shoprank {
namespace {

DocumentText doc(std::string text) { return DocumentText{"P1", std::move(text)}; }

LengthBudget whitespace_budget(std::size_t max_units) {
  return LengthBudget{max_units, whitespace_length_fn};
}

TEST(Render, TemplateLiteral) {
  const auto p = render("q1", "red shoe", doc("Acme sneaker"), LengthBudget{});
  EXPECT_EQ(p.text, "Query: red shoe Document: Acme sneaker Relevant:");
  EXPECT_FALSE(p.truncated);
  EXPECT_EQ(p.query_id, "q1");
  EXPECT_EQ(p.product_id, "P1");
  EXPECT_EQ(p.query_text, "red shoe");
  EXPECT_EQ(p.document_text, "Acme sneaker");
}

TEST(Render, EmptyDocumentKeepsBothSpaces) {
  const auto p = render("q", "red shoe", doc(""), LengthBudget{});
  EXPECT_EQ(p.text, "Query: red shoe Document:  Relevant:");
  EXPECT_FALSE(p.truncated);
}

TEST(Render, TruncatesToLongestFittingWordPrefix) {
  // Hand count: "Query:", "a", "Document:", "Relevant:" are 4 tokens, which
  // leaves room for 4 document words under a budget of 8.
  const auto p = render("q", "a", doc("w1 w2 w3 w4 w5"), whitespace_budget(8));
  EXPECT_EQ(p.text, "Query: a Document: w1 w2 w3 w4 Relevant:");
  EXPECT_EQ(whitespace_length_fn(p.text), 8u);
  EXPECT_TRUE(p.truncated);
  EXPECT_EQ(p.document_text, "w1 w2 w3 w4");
}

TEST(Render, ExactFitIsNotTruncated) {
  const auto p = render("q", "a", doc("w1 w2 w3 w4 w5"), whitespace_budget(9));
  EXPECT_FALSE(p.truncated);
  EXPECT_EQ(p.document_text, "w1 w2 w3 w4 w5");
}

TEST(Render, OverlongQueryYieldsEmptyDocumentAndTruncatedFlag) {
  const auto p =
      render("q", "one two three four", doc("doc words"), whitespace_budget(3));
  EXPECT_EQ(p.text, "Query: one two three four Document:  Relevant:");
  EXPECT_TRUE(p.truncated);
}

TEST(Render, OverBudgetEvenWhenDocumentIsEmpty) {
  const auto p = render("q", "one two three", doc(""), whitespace_budget(2));
  EXPECT_EQ(p.text, "Query: one two three Document:  Relevant:");
  EXPECT_TRUE(p.truncated);
}

TEST(Render, ZeroBudgetIsRejected) {
  EXPECT_THROW(render("q", "a", doc("b"), whitespace_budget(0)), Error);
}

TEST(Render, CutsAtWordEndsEvenWithIrregularSpacing) {
  const auto p = render("q", "a", doc("w1  w2\tw3 "), whitespace_budget(6));
  EXPECT_EQ(p.document_text, "w1  w2");
  EXPECT_TRUE(p.truncated);
}

TEST(Render, MatchesCommittedGoldens) {
  const auto goldens = nlohmann::json::parse(
      testing::read_file(testing::fixture_dir() / "prompts" / "goldens.json"));
  ASSERT_EQ(goldens.size(), 20u);
  for (const auto& g : goldens) {
    LengthBudget budget{g["max_units"].get<std::size_t>(),
                        g["length_fn"] == "whitespace"
                            ? LengthFn(whitespace_length_fn)
                            : LengthFn(default_length_fn)};
    const auto p = render("q", g["query"].get<std::string>(),
                          doc(g["document"].get<std::string>()), budget);
    EXPECT_EQ(p.text, g["text"].get<std::string>());
    EXPECT_EQ(p.truncated, g["truncated"].get<bool>()) << p.text;
  }
}

TEST(DefaultLengthFn, CountsWhitespaceRuns) {
  EXPECT_EQ(default_length_fn("a b  c"), 3u);
  EXPECT_EQ(default_length_fn(""), 0u);
  EXPECT_EQ(default_length_fn("   "), 0u);
  EXPECT_EQ(default_length_fn("\tword\n"), 1u);
}

TEST(DefaultLengthFn, MixedLatinJapaneseGolden) {
  // "red 赤い靴 size 25cm ワイヤレス": 5 runs. CJK codepoints: 赤 い 靴 (3) and
  // ワ イ ヤ レ ス (5), so 8 -> ceil(8 / 4) = 2. Total 7.
  EXPECT_EQ(default_length_fn("red 赤い靴 size 25cm ワイヤレス"), 7u);
  // Fullwidth colon U+FF1A is outside the CJK ranges: 1 run + ceil(2/4).
  EXPECT_EQ(default_length_fn("電池："), 2u);
  // Hangul: 1 run + ceil(4/4).
  EXPECT_EQ(default_length_fn("무선이어"), 2u);
}

TEST(DefaultLengthFn, InvalidUtf8CountsAsNonCjk) {
  EXPECT_EQ(default_length_fn("\xE3\x81"), 1u);
  EXPECT_EQ(default_length_fn("\xFF\xFE x"), 2u);
}

std::string random_words(std::mt19937& rng, int max_words) {
  static const std::vector<std::string> words = {
      "shoe", "red", "Acme", "日本語", "ワイヤレス", "x", "12oz", "防水", "b"};
  std::uniform_int_distribution<int> n(0, max_words);
  std::string s;
  for (int i = n(rng); i > 0; --i) {
    if (!s.empty()) s += ' ';
    s += words[rng() % words.size()];
  }
  return s;
}

TEST(DefaultLengthFnProperty, MonotoneUnderConcatenation) {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::string a = random_words(rng, 6);
    const std::string b = (rng() % 2 ? " " : "") + random_words(rng, 6);
    EXPECT_GE(default_length_fn(a + b), default_length_fn(a));
  }
}

TEST(RenderProperty, SplittingOnMarkersRecoversQueryAndDocument) {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const std::string q = random_words(rng, 4);
    const std::string d = random_words(rng, 12);
    const auto p = render("q", q, doc(d), LengthBudget{rng() % 20 + 1});
    const std::string& t = p.text;
    ASSERT_EQ(t.rfind(std::string(kQueryMarker), 0), 0u);
    ASSERT_TRUE(t.ends_with(kRelevantMarker));
    const auto doc_at = t.find(kDocumentMarker);
    ASSERT_NE(doc_at, std::string::npos);
    EXPECT_EQ(t.substr(kQueryMarker.size(), doc_at - kQueryMarker.size()), q);
    const auto d_begin = doc_at + kDocumentMarker.size();
    EXPECT_EQ(t.substr(d_begin, t.size() - kRelevantMarker.size() - d_begin),
              p.document_text);
  }
}

TEST(RenderProperty, FitsBudgetOrDocumentIsEmptyAndOnlySuffixRemoved) {
  std::mt19937 rng(23);
  for (int i = 0; i < 500; ++i) {
    const std::string q = random_words(rng, 5);
    const std::string d = random_words(rng, 20);
    const std::size_t max_units = rng() % 30 + 1;
    const auto p = render("q", q, doc(d), LengthBudget{max_units});
    EXPECT_TRUE(default_length_fn(p.text) <= max_units ||
                p.document_text.empty())
        << p.text;
    EXPECT_EQ(d.rfind(p.document_text, 0), 0u) << "not a prefix: " << p.text;
    EXPECT_EQ(p.truncated, p.document_text != d ||
                               default_length_fn(p.text) > max_units);
    // Longest: one more word would not fit.
    if (p.document_text != d) {
      auto next = d.find(' ', p.document_text.size() + 1);
      if (next == std::string::npos) next = d.size();
      EXPECT_GT(default_length_fn(render_template(q, d.substr(0, next))),
                max_units);
    }
  }
}

}  // namespace
}  // namespace shoprank
