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

#include "shoprank/csv.h"

#include "shoprank/error.h"

namespace shoprank::csv {

Reader::Reader(std::istream& in) : in_(in) {}

int Reader::get() {
  const int c = in_.get();
  if (c == '\n') ++line_;
  return c;
}

int Reader::peek() { return in_.peek(); }

bool Reader::next(Record& record) {
  constexpr int kEof = std::char_traits<char>::eof();
  if (!started_) {
    started_ = true;
    if (peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (in_.gcount() != 3 || static_cast<unsigned char>(bom[1]) != 0xBB ||
          static_cast<unsigned char>(bom[2]) != 0xBF) {
        // Not a BOM after all; put the bytes back.
        in_.clear();
        for (std::streamsize i = in_.gcount(); i > 0; --i) in_.unget();
      }
    }
  }

  for (;;) {
    record.fields.clear();
    record.line = line_;
    if (peek() == kEof) return false;

    std::string field;
    bool any_char = false;
    for (;;) {
      int c = get();
      if (c == kEof) {
        record.fields.push_back(std::move(field));
        break;
      }
      any_char = true;
      if (c == '"' && field.empty()) {
        // Quoted field.
        for (;;) {
          c = get();
          if (c == kEof) {
            throw Error(ErrorKind::kMalformedRow,
                        "record starting at line " +
                            std::to_string(record.line) +
                            ": unterminated quoted field");
          }
          if (c == '"') {
            if (peek() == '"') {
              get();
              field.push_back('"');
              continue;
            }
            break;
          }
          field.push_back(static_cast<char>(c));
        }
        c = peek();
        if (c != ',' && c != '\n' && c != '\r' && c != kEof) {
          throw Error(ErrorKind::kMalformedRow,
                      "line " + std::to_string(line_) +
                          ": unexpected character after closing quote");
        }
        continue;
      }
      if (c == ',') {
        record.fields.push_back(std::move(field));
        field.clear();
        continue;
      }
      if (c == '\r' && peek() == '\n') continue;
      if (c == '\n') {
        record.fields.push_back(std::move(field));
        break;
      }
      field.push_back(static_cast<char>(c));
    }
    if (!any_char ||
        (record.fields.size() == 1 && record.fields[0].empty())) {
      continue;  // blank line
    }
    return true;
  }
}

Header::Header(const Record& header_row) : names_(header_row.fields) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    index_.emplace(names_[i], i);
  }
}

std::optional<std::size_t> Header::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Header::require(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw Error(ErrorKind::kMissingColumn, std::string(name));
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace shoprank::csv
