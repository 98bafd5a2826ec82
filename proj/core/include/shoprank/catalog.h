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

#ifndef SHOPRANK_CATALOG_H_
#define SHOPRANK_CATALOG_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shoprank {

// One catalog record. Text fields that were empty or whitespace-only in the
// source are absent.
struct Product {
  std::string product_id;
  std::string locale;
  std::optional<std::string> title;
  std::optional<std::string> description;
  std::optional<std::string> bullet_points;
  std::optional<std::string> brand;
  std::optional<std::string> color_name;

  friend bool operator==(const Product&, const Product&) = default;
};

enum class EsciLabel { kExact, kSubstitute, kComplement, kIrrelevant };

// Accepts "exact", "substitute", "complement", "irrelevant" and the codes
// E/S/C/I, case-insensitively. Returns nullopt for anything else.
std::optional<EsciLabel> parse_esci_label(std::string_view text);
std::string_view esci_label_name(EsciLabel label);

struct Judgment {
  std::string product_id;
  EsciLabel label;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

struct QueryJudgments {
  std::string query_id;
  std::string query_text;
  std::string locale;
  std::vector<Judgment> judgments;

  friend bool operator==(const QueryJudgments&, const QueryJudgments&) =
      default;
};

// Products are keyed by (product_id, locale) since public datasets reuse ids
// across locales.
using ProductKey = std::pair<std::string, std::string>;

struct Catalog {
  std::map<ProductKey, Product> products;
  std::vector<QueryJudgments> queries;

  const Product* find(std::string_view product_id,
                      std::string_view locale) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

// Column names of the public Shopping Queries dataset.
namespace columns {
inline constexpr std::string_view kProductId = "product_id";
inline constexpr std::string_view kProductLocale = "product_locale";
inline constexpr std::string_view kProductTitle = "product_title";
inline constexpr std::string_view kProductDescription = "product_description";
inline constexpr std::string_view kProductBulletPoint = "product_bullet_point";
inline constexpr std::string_view kProductBrand = "product_brand";
inline constexpr std::string_view kProductColorName = "product_color_name";
inline constexpr std::string_view kQueryId = "query_id";
inline constexpr std::string_view kQuery = "query";
inline constexpr std::string_view kQueryLocale = "query_locale";
inline constexpr std::string_view kEsciLabel = "esci_label";
}  // namespace columns

// Products CSV. Throws Error with kMissingColumn, kDuplicateProductId or
// kMalformedRow. The returned catalog has no queries.
Catalog load_products(std::istream& in);
Catalog load_products(const std::filesystem::path& path);

// Judgments CSV, grouped by query_id in order of first appearance; products
// keep file order within a query. Throws kMissingColumn, kUnknownLabel,
// kConflictingQueryText or kMalformedRow.
std::vector<QueryJudgments> load_judgments(std::istream& in);
std::vector<QueryJudgments> load_judgments(const std::filesystem::path& path);

// Writers emit the canonical column set; loading their output yields equal
// values.
void write_products(std::ostream& out, const Catalog& catalog);
void write_judgments(std::ostream& out,
                     const std::vector<QueryJudgments>& queries);

struct MissingProduct {
  std::string query_id;
  std::string product_id;
  std::string locale;

  friend bool operator==(const MissingProduct&, const MissingProduct&) =
      default;
};

struct ValidationReport {
  std::vector<MissingProduct> missing;
  std::map<std::string, std::size_t> products_per_locale;
  std::map<std::string, std::size_t> queries_per_locale;
  std::map<std::string, std::size_t> judgments_per_locale;
  std::map<EsciLabel, std::size_t> label_counts;
  std::size_t total_judgments = 0;

  bool ok() const { return missing.empty(); }
};

ValidationReport validate(const Catalog& catalog);

// Deterministic JSON rendering of a report (key order fixed).
std::string to_json(const ValidationReport& report);

}  // namespace shoprank

#endif  // SHOPRANK_CATALOG_H_
