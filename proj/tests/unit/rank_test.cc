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

#include "shoprank/rank.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "shoprank/error.h"

namespace shoprank {
namespace {

ScoredPair sp(std::string qid, std::string pid, double s) {
  return ScoredPair{std::move(qid), std::move(pid), RelevanceScore{s}, "t"};
}

std::vector<std::string> ids(const Ranking& r) {
  std::vector<std::string> out;
  for (const auto& item : r.items) out.push_back(item.product_id);
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorKind::kIo;
}

TEST(RankQuery, OrdersByScoreThenProductId) {
  const std::vector<ScoredPair> pairs = {sp("q", "C", 0.2), sp("q", "B", 0.9),
                                         sp("q", "A", 0.2), sp("q", "D", 0.5)};
  const auto r = rank_query(pairs);
  EXPECT_EQ(r.query_id, "q");
  EXPECT_EQ(ids(r), (std::vector<std::string>{"B", "D", "A", "C"}));
}

TEST(RankQuery, TiesUseByteOrder) {
  const std::vector<ScoredPair> pairs = {sp("q", "b", 0.5), sp("q", "B", 0.5),
                                         sp("q", "a", 0.5)};
  EXPECT_EQ(ids(rank_query(pairs)), (std::vector<std::string>{"B", "a", "b"}));
}

TEST(RankQuery, Errors) {
  EXPECT_EQ(kind_of([] {
              const std::vector<ScoredPair> p = {sp("q1", "A", 1),
                                                 sp("q2", "B", 1)};
              rank_query(p);
            }),
            ErrorKind::kMixedQueryIds);
  EXPECT_EQ(kind_of([] {
              const std::vector<ScoredPair> p = {sp("q", "A", 1),
                                                 sp("q", "A", 0.5)};
              rank_query(p);
            }),
            ErrorKind::kDuplicateProduct);
}

TEST(RankQuery, EmptyHasNoItems) {
  EXPECT_TRUE(rank_query({}).items.empty());
}

// Pairwise definition of the order, checked against every output.
bool precedes(const RankedItem& a, const RankedItem& b) {
  return a.score > b.score || (a.score == b.score && a.product_id < b.product_id);
}

TEST(RankQueryProperty, PermutationSortedAndShuffleInvariant) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<ScoredPair> pairs;
    for (int i = 0; i < n; ++i) {
      // Coarse scores so ties are common.
      pairs.push_back(sp("q", "P" + std::to_string(rng() % 1000 + 1000 * i),
                         static_cast<double>(rng() % 4) / 4));
    }
    const auto r = rank_query(pairs);
    ASSERT_EQ(r.items.size(), pairs.size());
    for (std::size_t i = 0; i + 1 < r.items.size(); ++i) {
      EXPECT_TRUE(precedes(r.items[i], r.items[i + 1]));
    }
    auto in = ids(r);
    std::vector<std::string> orig;
    for (const auto& p : pairs) orig.push_back(p.product_id);
    std::sort(in.begin(), in.end());
    std::sort(orig.begin(), orig.end());
    EXPECT_EQ(in, orig);

    auto shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(rank_query(shuffled), r);

    // A strictly increasing transform of the scores keeps the order.
    auto transformed = pairs;
    for (auto& p : transformed) p.score.value = 3 * p.score.value + 1;
    EXPECT_EQ(ids(rank_query(transformed)), ids(r));
  }
}

TEST(BuildRun, GroupsByQuery) {
  const std::vector<ScoredPair> pairs = {sp("q2", "A", 0.1), sp("q1", "B", 0.3),
                                         sp("q2", "C", 0.9), sp("q1", "D", 0.4)};
  const auto run = build_run(pairs, "tag");
  EXPECT_EQ(run.run_tag, "tag");
  ASSERT_EQ(run.rankings.size(), 2u);
  EXPECT_EQ(ids(run.rankings.at("q1")), (std::vector<std::string>{"D", "B"}));
  EXPECT_EQ(ids(run.rankings.at("q2")), (std::vector<std::string>{"C", "A"}));
}

TEST(FormatScore, SixDecimals) {
  EXPECT_EQ(format_score(0.75), "0.750000");
  EXPECT_EQ(format_score(1.0), "1.000000");
  EXPECT_EQ(format_score(2.0 / 3.0), "0.666667");
  EXPECT_EQ(format_score(0.0), "0.000000");
  EXPECT_EQ(format_score(-0.0), "0.000000");
}

RunFile sample_run() {
  const std::vector<ScoredPair> pairs = {sp("q2", "A", 0.1), sp("q1", "B", 0.3),
                                         sp("q2", "C", 0.9), sp("q1", "D", 0.4),
                                         sp("q1", "E", 0.4)};
  return build_run(pairs, "demo");
}

TEST(WriteRun, TrecLines) {
  std::ostringstream out;
  write_run(out, sample_run());
  EXPECT_EQ(out.str(),
            "q1 Q0 D 1 0.400000 demo\n"
            "q1 Q0 E 2 0.400000 demo\n"
            "q1 Q0 B 3 0.300000 demo\n"
            "q2 Q0 C 1 0.900000 demo\n"
            "q2 Q0 A 2 0.100000 demo\n");
}

TEST(WriteRun, RejectsTokensWithWhitespace) {
  RunFile run = sample_run();
  run.run_tag = "two words";
  std::ostringstream out;
  EXPECT_EQ(kind_of([&] { write_run(out, run); }), ErrorKind::kInvalidArgument);
}

TEST(ReadRun, RoundTrip) {
  const auto run = sample_run();
  std::ostringstream out;
  write_run(out, run);
  std::istringstream in(out.str());
  const auto back = read_run(in);
  EXPECT_EQ(back, run);
  std::ostringstream again;
  write_run(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(ReadRunProperty, RoundTripPreservesOrderUnderRounding) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoredPair> pairs;
    for (int q = 0; q < 3; ++q) {
      for (int p = 0; p < 6; ++p) {
        // Scores that differ beyond the sixth decimal.
        pairs.push_back(sp("q" + std::to_string(q), "P" + std::to_string(p),
                           0.5 + u(rng) * 1e-6));
      }
    }
    std::ostringstream out;
    write_run(out, build_run(pairs, "r"));
    std::istringstream in(out.str());
    std::ostringstream again;
    write_run(again, read_run(in));
    EXPECT_EQ(again.str(), out.str());
  }
}

int malformed_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_run(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMalformedLine) << e.what();
    const auto pos = e.detail().find("line ");
    if (pos == std::string::npos) return -1;
    return std::stoi(e.detail().substr(pos + 5));
  }
  return 0;
}

TEST(ReadRun, MalformedLinesReportLineNumber) {
  EXPECT_EQ(malformed_line("q1 Q0 A 1 0.5 t\nq1 Q0 B 3 0.4 t\n"), 2);
  EXPECT_EQ(malformed_line("q1 Q0 A 1 0.5\n"), 1);
  EXPECT_EQ(malformed_line("q1 X A 1 0.5 t\n"), 1);
  EXPECT_EQ(malformed_line("q1 Q0 A one 0.5 t\n"), 1);
  EXPECT_EQ(malformed_line("q1 Q0 A 1 abc t\n"), 1);
  EXPECT_EQ(malformed_line("q1 Q0 A 1 0.5 t\nq1 Q0 B 2 0.4 u\n"), 2);
  EXPECT_EQ(malformed_line("q1 Q0 A 1 0.5 t\nq1 Q0 A 2 0.4 t\n"), 2);
  EXPECT_EQ(malformed_line("q1 Q0 A 1 0.5 t\nq1 Q0 B 2 0.6 t\n"), 2);
  EXPECT_EQ(malformed_line(
                "q1 Q0 A 1 0.5 t\nq2 Q0 B 1 0.4 t\nq1 Q0 C 2 0.3 t\n"),
            3);
}

TEST(WriteSubmission, HeaderAndRankOrder) {
  std::ostringstream out;
  write_submission(out, sample_run());
  EXPECT_EQ(out.str(),
            "query_id,product_id\nq1,D\nq1,E\nq1,B\nq2,C\nq2,A\n");
}

TEST(WriteSubmission, EmptyRunIsHeaderOnly) {
  std::ostringstream out;
  write_submission(out, RunFile{"x", {}});
  EXPECT_EQ(out.str(), "query_id,product_id\n");
}

}  // namespace
}  // namespace shoprank
