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

#ifndef SHOPRANK_CSV_H_
#define SHOPRANK_CSV_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shoprank::csv {

struct Record {
  std::vector<std::string> fields;
  // 1-based physical line on which the record starts.
  std::size_t line = 0;
};

// RFC 4180 reader: comma separated, '"' quoting with "" escapes, quoted
// fields may span lines, LF or CRLF terminators. A leading UTF-8 BOM is
// skipped and blank lines are ignored. Malformed quoting throws
// Error(kMalformedRow).
class Reader {
 public:
  explicit Reader(std::istream& in);

  // Returns false at end of input.
  bool next(Record& record);

 private:
  int get();
  int peek();

  std::istream& in_;
  std::size_t line_ = 1;
  bool started_ = false;
};

// Column lookup by header name.
class Header {
 public:
  explicit Header(const Record& header_row);

  // Throws Error(kMissingColumn) naming the column.
  std::size_t require(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string escape(std::string_view field);

void write_row(std::ostream& out, std::span<const std::string> fields);

}  // namespace shoprank::csv

#endif  // SHOPRANK_CSV_H_
