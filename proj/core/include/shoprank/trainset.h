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

#ifndef SHOPRANK_TRAINSET_H_
#define SHOPRANK_TRAINSET_H_

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoprank/catalog.h"
#include "shoprank/prompt.h"

namespace shoprank {

enum class SourceTask { kTask1, kTask2 };

std::string_view source_task_name(SourceTask task);

// Exact -> "true"; every other label -> "false".
std::string_view binarize(EsciLabel label);

struct TrainExample {
  std::string input_text;
  std::string target_token;
  SourceTask source_task = SourceTask::kTask1;
  std::string query_id;
  std::string product_id;
};

struct TaskJudgments {
  SourceTask task = SourceTask::kTask1;
  std::span<const QueryJudgments> queries;
};

struct ExportResult {
  std::size_t written = 0;
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  // One line per judgment whose product is not in the catalog.
  std::vector<std::string> warnings;
};

// One example per judgment whose product resolves in the query's locale,
// sorted by (query_id, product_id, source task).
ExportResult build_training(const Catalog& catalog,
                            std::span<const TaskJudgments> tasks,
                            const LengthBudget& budget,
                            std::vector<TrainExample>& examples);

// JSON-lines {"input","target","query_id","product_id","source_task"}.
void write_jsonl(std::ostream& out, std::span<const TrainExample> examples);

ExportResult export_training(const Catalog& catalog,
                             std::span<const TaskJudgments> tasks,
                             const LengthBudget& budget, std::ostream& out);
ExportResult export_training(const Catalog& catalog,
                             std::span<const TaskJudgments> tasks,
                             const LengthBudget& budget,
                             const std::filesystem::path& path);

}  // namespace shoprank

#endif  // SHOPRANK_TRAINSET_H_
