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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "json.hpp"
#include "oracles.h"

namespace shoprank {
namespace {

TEST(Binarize, OnlyExactIsTrue) {
  EXPECT_EQ(binarize(EsciLabel::kExact), "true");
  EXPECT_EQ(binarize(EsciLabel::kSubstitute), "false");
  EXPECT_EQ(binarize(EsciLabel::kComplement), "false");
  EXPECT_EQ(binarize(EsciLabel::kIrrelevant), "false");
}

TEST(SourceTask, Names) {
  EXPECT_EQ(source_task_name(SourceTask::kTask1), "task1");
  EXPECT_EQ(source_task_name(SourceTask::kTask2), "task2");
}

Catalog small_catalog() {
  Catalog c;
  Product p;
  p.product_id = "P1";
  p.locale = "us";
  p.title = "<b>Red</b> shoe";
  p.brand = "Acme";
  c.products.emplace(ProductKey("P1", "us"), p);
  return c;
}

TEST(BuildTraining, OneExamplePerResolvableJudgment) {
  const auto catalog = small_catalog();
  std::vector<QueryJudgments> q = {
      {"q1", "red shoe", "us",
       {{"P1", EsciLabel::kExact}, {"P7", EsciLabel::kExact}}},
      {"q2", "shoe", "us", {{"P1", EsciLabel::kSubstitute}}}};
  const std::vector<TaskJudgments> tasks = {{SourceTask::kTask1, q}};
  std::vector<TrainExample> examples;
  const auto result = build_training(catalog, tasks, LengthBudget{}, examples);
  ASSERT_EQ(examples.size(), 2u);
  EXPECT_EQ(result.written, 2u);
  EXPECT_EQ(result.true_count, 1u);
  EXPECT_EQ(result.false_count, 1u);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("P7"), std::string::npos);
  EXPECT_EQ(examples[0].input_text,
            "Query: red shoe Document: Red shoe Acme Relevant:");
  EXPECT_EQ(examples[0].target_token, "true");
  EXPECT_EQ(examples[1].target_token, "false");
}

TEST(BuildTraining, LocaleMustMatch) {
  const auto catalog = small_catalog();
  std::vector<QueryJudgments> q = {
      {"q1", "zapato", "es", {{"P1", EsciLabel::kExact}}}};
  const std::vector<TaskJudgments> tasks = {{SourceTask::kTask1, q}};
  std::vector<TrainExample> examples;
  const auto result = build_training(catalog, tasks, LengthBudget{}, examples);
  EXPECT_TRUE(examples.empty());
  EXPECT_EQ(result.warnings.size(), 1u);
}

TEST(WriteJsonl, KeysAndEscaping) {
  std::vector<TrainExample> ex = {{"Query: \"a\" Document: b\\c Relevant:",
                                   "true", SourceTask::kTask2, "q", "p"}};
  std::ostringstream out;
  write_jsonl(out, ex);
  EXPECT_EQ(out.str(),
            "{\"input\":\"Query: \\\"a\\\" Document: b\\\\c Relevant:\","
            "\"target\":\"true\",\"query_id\":\"q\",\"product_id\":\"p\","
            "\"source_task\":\"task2\"}\n");
}

TEST(ExportTraining, MatchesGolden) {
  const auto dir = testing::fixture_dir() / "trainset";
  const auto catalog = load_products(dir / "products.csv");
  const auto t1 = load_judgments(dir / "task1.csv");
  const auto t2 = load_judgments(dir / "task2.csv");
  const std::vector<TaskJudgments> tasks = {{SourceTask::kTask1, t1},
                                            {SourceTask::kTask2, t2}};
  std::ostringstream out;
  const auto result = export_training(catalog, tasks, LengthBudget{}, out);
  EXPECT_EQ(out.str(), testing::read_file(dir / "golden.jsonl"));
  EXPECT_EQ(result.written, 9u);
  EXPECT_EQ(result.true_count, 4u);
  EXPECT_EQ(result.false_count, 5u);
  EXPECT_EQ(result.warnings.size(), 1u);
}

// Target is "true" exactly when the source label is Exact, and the class
// counts add up to the number of written lines.
TEST(ExportTrainingProperty, TargetFollowsLabel) {
  std::mt19937_64 rng(11);
  Catalog catalog;
  for (int p = 0; p < 20; ++p) {
    Product prod;
    prod.product_id = "P" + std::to_string(p);
    prod.locale = "us";
    prod.title = "title " + std::to_string(p);
    catalog.products.emplace(ProductKey(prod.product_id, "us"), prod);
  }
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<QueryJudgments> q;
    std::map<std::pair<std::string, std::string>, EsciLabel> truth;
    for (int i = 0; i < 5; ++i) {
      QueryJudgments qj{"q" + std::to_string(i), "title", "us", {}};
      for (int p = 0; p < 20; ++p) {
        if (rng() % 3 != 0) continue;
        const auto label = static_cast<EsciLabel>(rng() % 4);
        qj.judgments.push_back({"P" + std::to_string(p), label});
        truth[{qj.query_id, "P" + std::to_string(p)}] = label;
      }
      q.push_back(std::move(qj));
    }
    const std::vector<TaskJudgments> tasks = {{SourceTask::kTask1, q}};
    std::ostringstream out;
    const auto result = export_training(catalog, tasks, LengthBudget{}, out);
    std::istringstream in(out.str());
    std::string line;
    std::size_t lines = 0, trues = 0;
    while (std::getline(in, line)) {
      const auto j = nlohmann::json::parse(line);
      const auto label = truth.at({j["query_id"], j["product_id"]});
      EXPECT_EQ(j["target"] == "true", label == EsciLabel::kExact);
      trues += j["target"] == "true";
      ++lines;
    }
    EXPECT_EQ(lines, truth.size());
    EXPECT_EQ(result.written, lines);
    EXPECT_EQ(result.true_count, trues);
    EXPECT_EQ(result.true_count + result.false_count, lines);
  }
}

}  // namespace
}  // namespace shoprank
