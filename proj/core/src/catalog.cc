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

#include "shoprank/catalog.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <unordered_map>

#include "json.hpp"
#include "shoprank/csv.h"
#include "shoprank/error.h"

namespace shoprank {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::optional<std::string> text_cell(const csv::Record& row,
                                     std::optional<std::size_t> column) {
  if (!column) return std::nullopt;
  const std::string& cell = row.fields[*column];
  if (is_blank(cell)) return std::nullopt;
  return cell;
}

std::string row_ref(std::size_t row, const csv::Record& record) {
  return "row " + std::to_string(row) + " (line " +
         std::to_string(record.line) + ")";
}

// Reads the header and all rows, checking arity.
template <typename Fn>
void for_each_row(std::istream& in, const std::vector<std::string_view>& required,
                  Fn&& fn) {
  csv::Reader reader(in);
  csv::Record record;
  if (!reader.next(record)) {
    throw Error(ErrorKind::kMissingColumn,
                std::string(required.front()) + " (empty file, no header)");
  }
  const csv::Header header(record);
  for (auto name : required) header.require(name);

  std::size_t row = 0;
  while (reader.next(record)) {
    ++row;
    if (record.fields.size() != header.size()) {
      throw Error(ErrorKind::kMalformedRow,
                  row_ref(row, record) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(record.fields.size()));
    }
    fn(header, record, row);
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open " + path.string());
  }
  return in;
}

}  // namespace

std::optional<EsciLabel> parse_esci_label(std::string_view text) {
  std::string lower(text);
  for (auto& c : lower) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lower == "exact" || lower == "e") return EsciLabel::kExact;
  if (lower == "substitute" || lower == "s") return EsciLabel::kSubstitute;
  if (lower == "complement" || lower == "c") return EsciLabel::kComplement;
  if (lower == "irrelevant" || lower == "i") return EsciLabel::kIrrelevant;
  return std::nullopt;
}

std::string_view esci_label_name(EsciLabel label) {
  switch (label) {
    case EsciLabel::kExact:
      return "exact";
    case EsciLabel::kSubstitute:
      return "substitute";
    case EsciLabel::kComplement:
      return "complement";
    case EsciLabel::kIrrelevant:
      return "irrelevant";
  }
  return "irrelevant";
}

const Product* Catalog::find(std::string_view product_id,
                             std::string_view locale) const {
  auto it = products.find(ProductKey(product_id, locale));
  return it == products.end() ? nullptr : &it->second;
}

Catalog load_products(std::istream& in) {
  Catalog catalog;
  for_each_row(
      in, {columns::kProductId, columns::kProductLocale},
      [&](const csv::Header& header, const csv::Record& record,
          std::size_t row) {
        Product p;
        p.product_id = record.fields[header.require(columns::kProductId)];
        p.locale = record.fields[header.require(columns::kProductLocale)];
        if (is_blank(p.product_id)) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": empty product_id");
        }
        if (is_blank(p.locale)) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": empty product_locale");
        }
        p.title = text_cell(record, header.find(columns::kProductTitle));
        p.description =
            text_cell(record, header.find(columns::kProductDescription));
        p.bullet_points =
            text_cell(record, header.find(columns::kProductBulletPoint));
        p.brand = text_cell(record, header.find(columns::kProductBrand));
        p.color_name =
            text_cell(record, header.find(columns::kProductColorName));

        ProductKey key(p.product_id, p.locale);
        if (catalog.products.contains(key)) {
          throw Error(ErrorKind::kDuplicateProductId,
                      p.product_id + " (locale " + p.locale + ", " +
                          row_ref(row, record) + ")");
        }
        catalog.products.emplace(std::move(key), std::move(p));
      });
  return catalog;
}

Catalog load_products(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_products(in);
}

std::vector<QueryJudgments> load_judgments(std::istream& in) {
  std::vector<QueryJudgments> queries;
  std::unordered_map<std::string, std::size_t> by_id;
  std::vector<std::unordered_map<std::string, std::size_t>> seen_products;

  for_each_row(
      in,
      {columns::kQueryId, columns::kQuery, columns::kQueryLocale,
       columns::kProductId, columns::kEsciLabel},
      [&](const csv::Header& header, const csv::Record& record,
          std::size_t row) {
        const auto& f = record.fields;
        const std::string& query_id = f[header.require(columns::kQueryId)];
        const std::string& query = f[header.require(columns::kQuery)];
        const std::string& locale = f[header.require(columns::kQueryLocale)];
        const std::string& product_id = f[header.require(columns::kProductId)];
        const std::string& label_text = f[header.require(columns::kEsciLabel)];

        if (is_blank(query_id)) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": empty query_id");
        }
        if (is_blank(product_id)) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": empty product_id");
        }
        const auto label = parse_esci_label(label_text);
        if (!label) {
          throw Error(ErrorKind::kUnknownLabel,
                      "'" + label_text + "' at " + row_ref(row, record));
        }

        auto [it, inserted] = by_id.emplace(query_id, queries.size());
        if (inserted) {
          queries.push_back(QueryJudgments{query_id, query, locale, {}});
          seen_products.emplace_back();
        }
        QueryJudgments& q = queries[it->second];
        if (q.query_text != query) {
          throw Error(ErrorKind::kConflictingQueryText,
                      "query_id " + query_id + ": '" + q.query_text +
                          "' vs '" + query + "' at " + row_ref(row, record));
        }
        if (q.locale != locale) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": query_id " + query_id +
                          " has locale " + locale + ", previously " +
                          q.locale);
        }
        auto& seen = seen_products[it->second];
        if (!seen.emplace(product_id, row).second) {
          throw Error(ErrorKind::kMalformedRow,
                      row_ref(row, record) + ": duplicate judgment for " +
                          product_id + " in query " + query_id);
        }
        q.judgments.push_back(Judgment{product_id, *label});
      });
  return queries;
}

std::vector<QueryJudgments> load_judgments(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_judgments(in);
}

void write_products(std::ostream& out, const Catalog& catalog) {
  const std::array<std::string, 7> header = {
      std::string(columns::kProductId),
      std::string(columns::kProductLocale),
      std::string(columns::kProductTitle),
      std::string(columns::kProductDescription),
      std::string(columns::kProductBulletPoint),
      std::string(columns::kProductBrand),
      std::string(columns::kProductColorName)};
  csv::write_row(out, header);
  for (const auto& [key, p] : catalog.products) {
    const std::array<std::string, 7> row = {
        p.product_id,
        p.locale,
        p.title.value_or(""),
        p.description.value_or(""),
        p.bullet_points.value_or(""),
        p.brand.value_or(""),
        p.color_name.value_or("")};
    csv::write_row(out, row);
  }
}

void write_judgments(std::ostream& out,
                     const std::vector<QueryJudgments>& queries) {
  const std::array<std::string, 5> header = {
      std::string(columns::kQueryId), std::string(columns::kQuery),
      std::string(columns::kQueryLocale), std::string(columns::kProductId),
      std::string(columns::kEsciLabel)};
  csv::write_row(out, header);
  for (const auto& q : queries) {
    for (const auto& j : q.judgments) {
      const std::array<std::string, 5> row = {
          q.query_id, q.query_text, q.locale, j.product_id,
          std::string(esci_label_name(j.label))};
      csv::write_row(out, row);
    }
  }
}

ValidationReport validate(const Catalog& catalog) {
  ValidationReport report;
  for (auto label : {EsciLabel::kExact, EsciLabel::kSubstitute,
                     EsciLabel::kComplement, EsciLabel::kIrrelevant}) {
    report.label_counts[label] = 0;
  }
  for (const auto& [key, product] : catalog.products) {
    ++report.products_per_locale[product.locale];
  }
  for (const auto& q : catalog.queries) {
    ++report.queries_per_locale[q.locale];
    for (const auto& j : q.judgments) {
      ++report.label_counts[j.label];
      ++report.judgments_per_locale[q.locale];
      ++report.total_judgments;
      if (catalog.find(j.product_id, q.locale) == nullptr) {
        report.missing.push_back({q.query_id, j.product_id, q.locale});
      }
    }
  }
  return report;
}

std::string to_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["ok"] = report.ok();
  j["total_judgments"] = report.total_judgments;
  auto& labels = j["label_counts"] = nlohmann::ordered_json::object();
  for (const auto& [label, count] : report.label_counts) {
    labels[std::string(esci_label_name(label))] = count;
  }
  j["products_per_locale"] = report.products_per_locale;
  j["queries_per_locale"] = report.queries_per_locale;
  j["judgments_per_locale"] = report.judgments_per_locale;
  auto& missing = j["missing"] = nlohmann::ordered_json::array();
  for (const auto& m : report.missing) {
    missing.push_back({{"query_id", m.query_id},
                       {"product_id", m.product_id},
                       {"locale", m.locale}});
  }
  return j.dump(2);
}

}  // namespace shoprank
