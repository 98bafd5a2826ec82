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

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "shoprank/csv.h"
#include "shoprank/error.h"

namespace shoprank {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
}

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::kMalformedLine,
              "line " + std::to_string(line) + ": " + why);
}

// Run-file fields are whitespace-separated, so tokens must be non-empty and
// free of whitespace.
void check_token(const std::string& token, const char* what) {
  if (token.empty() || token.find_first_of(" \t\r\n\f\v") != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + " '" + token +
                    "' cannot be written to a run file");
  }
}

}  // namespace

Ranking rank_query(std::span<const ScoredPair> pairs) {
  Ranking ranking;
  if (pairs.empty()) return ranking;
  ranking.query_id = pairs.front().query_id;
  std::unordered_set<std::string> seen;
  ranking.items.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.query_id != ranking.query_id) {
      throw Error(ErrorKind::kMixedQueryIds,
                  ranking.query_id + " and " + p.query_id);
    }
    if (!seen.insert(p.product_id).second) {
      throw Error(ErrorKind::kDuplicateProduct,
                  p.product_id + " in query " + p.query_id);
    }
    ranking.items.push_back(RankedItem{p.product_id, p.score.value});
  }
  std::sort(ranking.items.begin(), ranking.items.end(),
            [](const RankedItem& a, const RankedItem& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.product_id < b.product_id;
            });
  return ranking;
}

RunFile build_run(std::span<const ScoredPair> pairs, std::string run_tag) {
  std::map<std::string, std::vector<ScoredPair>> by_query;
  for (const auto& p : pairs) by_query[p.query_id].push_back(p);
  RunFile run;
  run.run_tag = std::move(run_tag);
  for (auto& [query_id, group] : by_query) {
    run.rankings.emplace(query_id, rank_query(group));
  }
  return run;
}

std::string format_score(double score) {
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), score,
                                 std::chars_format::fixed, 6);
  if (ec != std::errc()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot format score");
  }
  std::string text(buf.data(), end);
  if (text == "-0.000000") text.erase(0, 1);
  return text;
}

void write_run(std::ostream& out, const RunFile& run) {
  check_token(run.run_tag, "run tag");
  for (const auto& [query_id, ranking] : run.rankings) {
    check_token(query_id, "query_id");
    std::size_t rank = 1;
    for (const auto& item : ranking.items) {
      check_token(item.product_id, "product_id");
      out << query_id << " Q0 " << item.product_id << ' ' << rank++ << ' '
          << format_score(item.score) << ' ' << run.run_tag << '\n';
    }
  }
}

void write_run(const std::filesystem::path& path, const RunFile& run) {
  auto out = open_output(path);
  write_run(out, run);
  check_written(out, path);
}

RunFile read_run(std::istream& in) {
  RunFile run;
  bool have_tag = false;
  std::string current_query;
  std::set<std::string> finished;
  std::unordered_set<std::string> products;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::istringstream fields(line);
    std::string query_id, q0, product_id, rank_text, score_text, tag, extra;
    if (!(fields >> query_id >> q0 >> product_id >> rank_text >> score_text >>
          tag)) {
      malformed(line_no, "expected 6 fields");
    }
    if (fields >> extra) malformed(line_no, "trailing field '" + extra + "'");
    if (q0 != "Q0") malformed(line_no, "second field must be Q0");

    std::size_t rank = 0;
    {
      const char* b = rank_text.data();
      const char* e = b + rank_text.size();
      auto [ptr, ec] = std::from_chars(b, e, rank);
      if (ec != std::errc() || ptr != e) {
        malformed(line_no, "bad rank '" + rank_text + "'");
      }
    }
    double score = 0.0;
    {
      const char* b = score_text.data();
      const char* e = b + score_text.size();
      auto [ptr, ec] = std::from_chars(b, e, score);
      if (ec != std::errc() || ptr != e) {
        malformed(line_no, "bad score '" + score_text + "'");
      }
    }

    if (!have_tag) {
      run.run_tag = tag;
      have_tag = true;
    } else if (tag != run.run_tag) {
      malformed(line_no, "run tag '" + tag + "' differs from '" +
                             run.run_tag + "'");
    }

    if (query_id != current_query) {
      if (!current_query.empty()) finished.insert(current_query);
      if (finished.contains(query_id)) {
        malformed(line_no, "query " + query_id + " appears in two blocks");
      }
      current_query = query_id;
      products.clear();
      run.rankings[query_id].query_id = query_id;
    }
    Ranking& ranking = run.rankings[query_id];
    if (rank != ranking.items.size() + 1) {
      malformed(line_no, "rank " + rank_text + " where " +
                             std::to_string(ranking.items.size() + 1) +
                             " was expected");
    }
    if (!products.insert(product_id).second) {
      malformed(line_no, "duplicate product " + product_id);
    }
    if (!ranking.items.empty() && score > ranking.items.back().score) {
      malformed(line_no, "score increases down the ranking");
    }
    ranking.items.push_back(RankedItem{product_id, score});
  }
  return run;
}

RunFile read_run(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_run(in);
}

void write_submission(std::ostream& out, const RunFile& run) {
  out << "query_id,product_id\n";
  for (const auto& [query_id, ranking] : run.rankings) {
    for (const auto& item : ranking.items) {
      const std::array<std::string, 2> row = {query_id, item.product_id};
      csv::write_row(out, row);
    }
  }
}

void write_submission(const std::filesystem::path& path, const RunFile& run) {
  auto out = open_output(path);
  write_submission(out, run);
  check_written(out, path);
}

}  // namespace shoprank
