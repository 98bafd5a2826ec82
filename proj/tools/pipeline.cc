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

#include "pipeline.h"

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "shoprank/catalog.h"
#include "shoprank/docbuilder.h"
#include "shoprank/error.h"
#include "shoprank/eval.h"
#include "shoprank/prompt.h"
#include "shoprank/rank.h"
#include "shoprank/remote.h"
#include "shoprank/scorer.h"
#include "shoprank/trainset.h"

#ifndef SHOPRANK_DEFAULT_CONFORMANCE
#define SHOPRANK_DEFAULT_CONFORMANCE "conformance.json"
#endif

namespace shoprank::cli {
namespace {

void warn(std::ostream& log, const std::string& message) {
  log << "shoprank: warning: " << message << '\n';
}

int report_error(std::ostream& log, const Error& e) {
  log << "shoprank: error: " << e.what() << '\n';
  return e.kind() == ErrorKind::kScorerUnavailable ? kExitScorerUnavailable
                                                   : kExitFailure;
}

void require_path(const std::filesystem::path& path, const char* flag) {
  if (path.empty()) {
    throw Error(ErrorKind::kInvalidArgument, std::string(flag) + " is required");
  }
}

std::filesystem::path ensure_out_dir(const PipelineConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot create " + config.out_dir.string() +
                                    ": " + ec.message());
  }
  return config.out_dir;
}

std::vector<QueryJudgments> filter_locale(std::vector<QueryJudgments> queries,
                                          const std::string& locale) {
  if (locale.empty()) return queries;
  std::vector<QueryJudgments> kept;
  for (auto& q : queries) {
    if (q.locale == locale) kept.push_back(std::move(q));
  }
  return kept;
}

Catalog load_catalog(const PipelineConfig& config) {
  require_path(config.products, "--products");
  require_path(config.judgments, "--judgments");
  Catalog catalog = load_products(config.products);
  if (!config.locale.empty()) {
    std::erase_if(catalog.products, [&](const auto& entry) {
      return entry.second.locale != config.locale;
    });
  }
  catalog.queries = filter_locale(load_judgments(config.judgments),
                                  config.locale);
  return catalog;
}

LengthBudget make_budget(const PipelineConfig& config) {
  return LengthBudget{config.max_units, default_length_fn};
}

std::unique_ptr<Scorer> make_scorer(const PipelineConfig& config) {
  if (config.scorer == ScorerKind::kLexical) {
    return std::make_unique<LexicalScorer>();
  }
  if (config.endpoint.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "--scorer remote needs --endpoint or SHOPRANK_ENDPOINT");
  }
  RemoteOptions options;
  options.batch_size = config.batch_size;
  options.max_in_flight = config.max_in_flight;
  options.retries = config.retries;
  options.timeout = std::chrono::milliseconds(config.timeout_ms);
  return std::make_unique<RemoteScorer>(Endpoint::parse(config.endpoint),
                                        options);
}

}  // namespace

int cmd_validate(const PipelineConfig& config, std::ostream& out,
                 std::ostream& log) {
  try {
    const Catalog catalog = load_catalog(config);
    const ValidationReport report = validate(catalog);
    out << to_json(report) << '\n';
    for (const auto& m : report.missing) {
      warn(log, "query " + m.query_id + " judges unknown product " +
                    m.product_id + " (locale " + m.locale + ")");
    }
    return report.ok() ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    return report_error(log, e);
  }
}

int cmd_rank(const PipelineConfig& config, std::ostream& out,
             std::ostream& log) {
  try {
    const Catalog catalog = load_catalog(config);
    const LengthBudget budget = make_budget(config);

    std::vector<Prompt> prompts;
    std::map<ProductKey, DocumentText> documents;
    std::size_t truncated = 0;
    for (const auto& q : catalog.queries) {
      for (const auto& j : q.judgments) {
        const Product* product = catalog.find(j.product_id, q.locale);
        if (product == nullptr) {
          warn(log, "query " + q.query_id + ": product " + j.product_id +
                        " (locale " + q.locale + ") not in catalog, skipped");
          continue;
        }
        auto [it, inserted] =
            documents.try_emplace(ProductKey(j.product_id, q.locale));
        if (inserted) it->second = build_document(*product);
        prompts.push_back(render(q.query_id, q.query_text, it->second, budget));
        truncated += prompts.back().truncated ? 1 : 0;
      }
    }

    RunFile run;
    run.run_tag = config.run_tag;
    if (prompts.empty()) {
      warn(log, "no resolvable judged pairs; writing empty outputs");
    } else {
      auto scorer = make_scorer(config);
      log << "shoprank: scoring " << prompts.size() << " prompts with "
          << scorer->tag() << " (" << truncated << " truncated)\n";
      const auto pairs = score_batch(*scorer, prompts);
      run = build_run(pairs, config.run_tag);
      if (auto* remote = dynamic_cast<RemoteScorer*>(scorer.get())) {
        const auto stats = remote->stats();
        log << "shoprank: " << stats.batch_sizes.size() << " batches, "
            << stats.requests << " requests, " << stats.retries.size()
            << " retries\n";
      }
    }

    const auto dir = ensure_out_dir(config);
    write_run(dir / kRunFileName, run);
    write_submission(dir / kSubmissionFileName, run);
    out << (dir / kRunFileName).string() << '\n'
        << (dir / kSubmissionFileName).string() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(log, e);
  }
}

int cmd_evaluate(const PipelineConfig& config, std::ostream& out,
                 std::ostream& log) {
  try {
    require_path(config.judgments, "--judgments");
    const auto run_path =
        config.run.empty() ? config.out_dir / kRunFileName : config.run;
    const RunFile run = read_run(run_path);
    const auto judgments =
        filter_locale(load_judgments(config.judgments), config.locale);
    const GainMap gains = parse_gain_overrides(config.gains);

    const EvalReport report =
        evaluate_run(run, judgments, gains, EvalOptions{config.k,
                                                        config.skip_zero});
    for (const auto& q : report.missing_judgments) {
      warn(log, "MissingJudgments: run query " + q +
                    " has no judgments, excluded");
    }
    for (const auto& q : report.zero_ideal) {
      warn(log, "query " + q + " has zero ideal DCG, skipped");
    }

    const auto dir = ensure_out_dir(config);
    {
      const auto path = dir / kReportFileName;
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      file << to_json(report);
      if (!file) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    }
    std::ostringstream line;
    line << "nDCG@" << report.k << ' ' << format_score(report.macro_mean)
         << " (" << report.per_query.size() << " queries)\n";
    out << line.str();
    return kExitOk;
  } catch (const Error& e) {
    return report_error(log, e);
  }
}

int cmd_export_train(const PipelineConfig& config, std::ostream& out,
                     std::ostream& log) {
  try {
    const Catalog catalog = load_catalog(config);
    std::vector<QueryJudgments> task2;
    std::vector<TaskJudgments> tasks{
        TaskJudgments{SourceTask::kTask1, catalog.queries}};
    if (!config.task2_judgments.empty()) {
      task2 = filter_locale(load_judgments(config.task2_judgments),
                            config.locale);
      tasks.push_back(TaskJudgments{SourceTask::kTask2, task2});
    }
    const auto path = ensure_out_dir(config) / kTrainFileName;
    const ExportResult result =
        export_training(catalog, tasks, make_budget(config), path);
    for (const auto& w : result.warnings) warn(log, w);
    log << "shoprank: exported " << result.written << " examples ("
        << result.true_count << " true, " << result.false_count
        << " false)\n";
    out << path.string() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    return report_error(log, e);
  }
}

int cmd_check_server(const PipelineConfig& config, std::ostream& out,
                     std::ostream& log) {
  try {
    if (config.endpoint.empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "check-server needs --endpoint or SHOPRANK_ENDPOINT");
    }
    const auto fixture_path = config.conformance.empty()
                                  ? std::filesystem::path(
                                        SHOPRANK_DEFAULT_CONFORMANCE)
                                  : config.conformance;
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::kIo, "cannot open " + fixture_path.string());
    }
    std::ostringstream fixture;
    fixture << in.rdbuf();

    const auto results =
        run_conformance(Endpoint::parse(config.endpoint), fixture.str(),
                        std::chrono::milliseconds(config.timeout_ms));
    bool all = true;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
          << '\n';
      all = all && r.passed;
    }
    if (!results.empty() && !results.front().passed) {
      return kExitScorerUnavailable;
    }
    return all ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    return report_error(log, e);
  } catch (const std::exception& e) {
    log << "shoprank: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& log) {
  CLI::App app{"Product-search reranking: validate, rank, evaluate, export"};
  app.name("shoprank");
  app.set_config("--config", "", "TOML-style key = value file; flags win");
  app.require_subcommand(1, 1);
  app.fallthrough();

  PipelineConfig config;
  std::string scorer = "lexical";

  app.add_option("--products", config.products, "Products CSV");
  app.add_option("--judgments", config.judgments, "Judgments CSV");
  app.add_option("--task2-judgments", config.task2_judgments,
                 "Task-2 judgments CSV (export-train)");
  app.add_option("--out-dir", config.out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--run", config.run,
                 "Run file to evaluate (default <out-dir>/run.trec)");
  app.add_option("--conformance", config.conformance,
                 "Protocol conformance fixture (check-server)");
  app.add_option("--scorer", scorer, "Scorer")
      ->check(CLI::IsMember({"lexical", "remote"}))
      ->capture_default_str();
  app.add_option("--endpoint", config.endpoint, "Inference server URL")
      ->envname("SHOPRANK_ENDPOINT");
  app.add_option("--batch-size", config.batch_size, "Pairs per request")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-in-flight", config.max_in_flight,
                 "Concurrent requests")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--retries", config.retries, "Retries per batch")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--timeout-ms", config.timeout_ms, "Per-request timeout")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-units", config.max_units, "Prompt length budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--k", config.k, "nDCG cutoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--gains", config.gains, "Gain overrides, e.g. E=1,S=0.1");
  app.add_flag("--skip-zero", config.skip_zero,
               "Exclude zero-ideal queries from the mean");
  app.add_option("--run-tag", config.run_tag, "Run tag")
      ->capture_default_str();
  app.add_option("--locale", config.locale, "Only this locale");

  auto* validate_cmd =
      app.add_subcommand("validate", "Check the catalog, print a JSON report");
  auto* rank_cmd =
      app.add_subcommand("rank", "Score and rank judged pairs");
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "nDCG@k of a run file");
  auto* export_cmd =
      app.add_subcommand("export-train", "Write fine-tuning JSONL");
  auto* check_cmd = app.add_subcommand(
      "check-server", "Run protocol conformance checks against a server");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kExitOk : kExitFailure;
  }
  config.scorer = scorer == "remote" ? ScorerKind::kRemote : ScorerKind::kLexical;

  if (*validate_cmd) return cmd_validate(config, out, log);
  if (*rank_cmd) return cmd_rank(config, out, log);
  if (*evaluate_cmd) return cmd_evaluate(config, out, log);
  if (*export_cmd) return cmd_export_train(config, out, log);
  if (*check_cmd) return cmd_check_server(config, out, log);
  return kExitFailure;
}

}  // namespace shoprank::cli
