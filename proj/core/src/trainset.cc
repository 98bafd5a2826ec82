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

#include "shoprank/trainset.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

#include "json.hpp"
#include "shoprank/docbuilder.h"
#include "shoprank/error.h"

namespace shoprank {

std::string_view source_task_name(SourceTask task) {
  return task == SourceTask::kTask1 ? "task1" : "task2";
}

std::string_view binarize(EsciLabel label) {
  return label == EsciLabel::kExact ? "true" : "false";
}

ExportResult build_training(const Catalog& catalog,
                            std::span<const TaskJudgments> tasks,
                            const LengthBudget& budget,
                            std::vector<TrainExample>& examples) {
  ExportResult result;
  std::map<ProductKey, DocumentText> documents;
  examples.clear();
  for (const auto& task : tasks) {
    for (const auto& q : task.queries) {
      for (const auto& j : q.judgments) {
        const Product* product = catalog.find(j.product_id, q.locale);
        if (product == nullptr) {
          result.warnings.push_back(
              std::string(source_task_name(task.task)) + " query " +
              q.query_id + ": product " + j.product_id + " (locale " +
              q.locale + ") not in catalog, skipped");
          continue;
        }
        auto [it, inserted] =
            documents.try_emplace(ProductKey(j.product_id, q.locale));
        if (inserted) it->second = build_document(*product);
        const Prompt prompt =
            render(q.query_id, q.query_text, it->second, budget);
        examples.push_back(TrainExample{prompt.text,
                                        std::string(binarize(j.label)),
                                        task.task, q.query_id, j.product_id});
      }
    }
  }
  std::stable_sort(examples.begin(), examples.end(),
                   [](const TrainExample& a, const TrainExample& b) {
                     return std::tie(a.query_id, a.product_id, a.source_task) <
                            std::tie(b.query_id, b.product_id, b.source_task);
                   });
  for (const auto& e : examples) {
    ++(e.target_token == "true" ? result.true_count : result.false_count);
  }
  result.written = examples.size();
  return result;
}

void write_jsonl(std::ostream& out, std::span<const TrainExample> examples) {
  for (const auto& e : examples) {
    nlohmann::ordered_json line;
    line["input"] = e.input_text;
    line["target"] = e.target_token;
    line["query_id"] = e.query_id;
    line["product_id"] = e.product_id;
    line["source_task"] = source_task_name(e.source_task);
    // Invalid UTF-8 is replaced rather than aborting the export.
    out << line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
        << '\n';
  }
}

ExportResult export_training(const Catalog& catalog,
                             std::span<const TaskJudgments> tasks,
                             const LengthBudget& budget, std::ostream& out) {
  std::vector<TrainExample> examples;
  ExportResult result = build_training(catalog, tasks, budget, examples);
  write_jsonl(out, examples);
  return result;
}

ExportResult export_training(const Catalog& catalog,
                             std::span<const TaskJudgments> tasks,
                             const LengthBudget& budget,
                             const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  ExportResult result = export_training(catalog, tasks, budget, out);
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path.string());
  return result;
}

}  // namespace shoprank
