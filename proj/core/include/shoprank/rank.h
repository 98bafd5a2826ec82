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

#ifndef SHOPRANK_RANK_H_
#define SHOPRANK_RANK_H_

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "shoprank/scorer.h"

namespace shoprank {

struct RankedItem {
  std::string product_id;
  double score = 0.0;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

// Scores non-increasing down the list, ties by ascending product_id (byte
// order), no duplicate products.
struct Ranking {
  std::string query_id;
  std::vector<RankedItem> items;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

struct RunFile {
  std::string run_tag;
  std::map<std::string, Ranking> rankings;  // keyed by query_id

  friend bool operator==(const RunFile&, const RunFile&) = default;
};

// Orders one query's pairs by score descending, then product_id ascending.
// Throws kMixedQueryIds or kDuplicateProduct.
Ranking rank_query(std::span<const ScoredPair> pairs);

// Groups pairs by query_id and ranks each query.
RunFile build_run(std::span<const ScoredPair> pairs, std::string run_tag);

// Fixed-point score text used by run files.
std::string format_score(double score);

// TREC lines "query_id Q0 product_id rank score run_tag", ranks from 1,
// scores with 6 decimals, queries in ascending query_id order.
void write_run(std::ostream& out, const RunFile& run);
void write_run(const std::filesystem::path& path, const RunFile& run);

// Inverse of write_run; keeps file order within a query. Throws
// kMalformedLine with the 1-based line number.
RunFile read_run(std::istream& in);
RunFile read_run(const std::filesystem::path& path);

// CSV "query_id,product_id", queries ascending, products in rank order.
void write_submission(std::ostream& out, const RunFile& run);
void write_submission(const std::filesystem::path& path, const RunFile& run);

}  // namespace shoprank

#endif  // SHOPRANK_RANK_H_
