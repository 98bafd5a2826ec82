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

#include "shoprank/remote.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <random>
#include <thread>
#include <tuple>

#include "httplib.h"
#include "json.hpp"
#include "shoprank/error.h"

namespace shoprank {
namespace {

using json = nlohmann::json;

constexpr std::string_view kScorePath = "/v1/score";
constexpr std::string_view kHealthPath = "/v1/health";

httplib::Client make_client(const Endpoint& endpoint,
                            std::chrono::milliseconds timeout) {
  httplib::Client client(endpoint.host_port);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

// Outcome of one HTTP attempt that did not produce logits.
struct AttemptFailure {
  bool retryable = false;
  std::string reason;
};

std::string encode_pairs(std::span<const Prompt> prompts) {
  json pairs = json::array();
  for (const auto& p : prompts) {
    pairs.push_back({{"query", p.query_text}, {"document", p.document_text}});
  }
  return json{{"pairs", std::move(pairs)}}.dump();
}

std::chrono::milliseconds backoff_delay(const RemoteOptions& options,
                                        std::size_t attempt,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jitter(-options.jitter,
                                                options.jitter);
  const double base = static_cast<double>(options.backoff_base.count()) *
                      std::pow(options.backoff_factor,
                               static_cast<double>(attempt - 1));
  const double scaled = std::max(0.0, base * (1.0 + jitter(rng)));
  return std::chrono::milliseconds(static_cast<long long>(std::llround(scaled)));
}

}  // namespace

Endpoint Endpoint::parse(std::string_view url) {
  std::string_view rest = url;
  const auto scheme_end = rest.find("://");
  if (scheme_end != std::string_view::npos) {
    const auto scheme = rest.substr(0, scheme_end);
    if (scheme != "http") {
      throw Error(ErrorKind::kInvalidArgument,
                  "unsupported scheme '" + std::string(scheme) + "' in " +
                      std::string(url));
    }
    rest.remove_prefix(scheme_end + 3);
  }
  const auto slash = rest.find('/');
  const auto authority = rest.substr(0, slash);
  if (authority.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "missing host in endpoint '" + std::string(url) + "'");
  }
  Endpoint endpoint;
  endpoint.host_port = "http://" + std::string(authority);
  if (slash != std::string_view::npos) {
    std::string base(rest.substr(slash));
    while (!base.empty() && base.back() == '/') base.pop_back();
    endpoint.base_path = std::move(base);
  }
  return endpoint;
}

std::string encode_score_request(std::span<const Prompt> prompts) {
  return encode_pairs(prompts);
}

std::vector<TokenLogits> decode_score_response(std::string_view body,
                                               std::size_t expected) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kProtocolError,
                std::string("non-JSON response body: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("logits") ||
      !doc["logits"].is_array()) {
    throw Error(ErrorKind::kProtocolError,
                "response lacks a \"logits\" array");
  }
  const auto& list = doc["logits"];
  if (list.size() != expected) {
    throw Error(ErrorKind::kProtocolError,
                "length mismatch: sent " + std::to_string(expected) +
                    " pairs, got " + std::to_string(list.size()) + " logits");
  }
  std::vector<TokenLogits> out;
  out.reserve(expected);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& item = list[i];
    auto field = [&](const char* name) {
      if (!item.is_object() || !item.contains(name) ||
          !item[name].is_number()) {
        throw Error(ErrorKind::kProtocolError,
                    "logits[" + std::to_string(i) + "]." + name +
                        " missing or not a number");
      }
      const double v = item[name].get<double>();
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::kProtocolError,
                    "logits[" + std::to_string(i) + "]." + name +
                        " is not finite");
      }
      return v;
    };
    out.push_back(TokenLogits{field("logit_pos"), field("logit_neg")});
  }
  return out;
}

std::vector<TokenLogits> remote_score(const Endpoint& endpoint,
                                      std::span<const Prompt> prompts,
                                      const RemoteOptions& options,
                                      RemoteStats* stats) {
  if (options.batch_size == 0) {
    throw Error(ErrorKind::kInvalidArgument, "batch_size must be >= 1");
  }
  const std::size_t n = prompts.size();
  const std::size_t num_batches =
      (n + options.batch_size - 1) / options.batch_size;
  std::vector<TokenLogits> results(n);

  RemoteStats local;
  for (std::size_t b = 0; b < num_batches; ++b) {
    local.batch_sizes.push_back(
        std::min(options.batch_size, n - b * options.batch_size));
  }

  std::atomic<std::size_t> next_batch{0};
  std::atomic<std::size_t> requests{0};
  std::atomic<bool> abort{false};
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<RetryEvent> retry_events;

  const std::string path = endpoint.base_path + std::string(kScorePath);

  auto run_batch = [&](httplib::Client& client, std::size_t b) {
    const std::size_t begin = b * options.batch_size;
    const auto batch = prompts.subspan(begin, local.batch_sizes[b]);
    const std::string body = encode_pairs(batch);
    std::mt19937_64 rng(options.seed ^ (0x9E3779B97F4A7C15ull * (b + 1)));

    for (std::size_t attempt = 0;; ++attempt) {
      requests.fetch_add(1);
      std::optional<AttemptFailure> failure;
      auto res = client.Post(path, body, "application/json");
      if (!res) {
        failure = AttemptFailure{true, "transport: " +
                                           httplib::to_string(res.error())};
      } else if (res->status >= 500) {
        failure = AttemptFailure{true,
                                 "HTTP " + std::to_string(res->status)};
      } else if (res->status != 200) {
        throw Error(ErrorKind::kProtocolError,
                    "batch " + std::to_string(b) + ": HTTP " +
                        std::to_string(res->status) + " " + res->body);
      } else {
        auto logits = decode_score_response(res->body, batch.size());
        std::copy(logits.begin(), logits.end(), results.begin() + begin);
        return;
      }

      if (attempt >= options.retries || abort.load()) {
        throw Error(ErrorKind::kScorerUnavailable,
                    endpoint.url() + ": batch " + std::to_string(b) +
                        " failed after " + std::to_string(attempt + 1) +
                        " attempt(s); last error: " + failure->reason);
      }
      const auto delay = backoff_delay(options, attempt + 1, rng);
      {
        std::lock_guard lock(mu);
        retry_events.push_back(
            RetryEvent{b, attempt + 1, delay, failure->reason});
      }
      std::this_thread::sleep_for(delay);
    }
  };

  auto worker = [&] {
    auto client = make_client(endpoint, options.timeout);
    while (!abort.load()) {
      const std::size_t b = next_batch.fetch_add(1);
      if (b >= num_batches) return;
      try {
        run_batch(client, b);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first_error) first_error = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  const std::size_t workers =
      std::min(std::max<std::size_t>(options.max_in_flight, 1), num_batches);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  std::sort(retry_events.begin(), retry_events.end(),
            [](const RetryEvent& a, const RetryEvent& b) {
              return std::tie(a.batch_index, a.attempt) <
                     std::tie(b.batch_index, b.attempt);
            });
  local.requests = requests.load();
  local.retries = std::move(retry_events);
  if (stats) *stats = std::move(local);
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

HealthStatus remote_health(const Endpoint& endpoint,
                           std::chrono::milliseconds timeout) {
  auto client = make_client(endpoint, timeout);
  auto res = client.Get(endpoint.base_path + std::string(kHealthPath));
  if (!res) {
    throw Error(ErrorKind::kScorerUnavailable,
                endpoint.url() + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorKind::kScorerUnavailable,
                endpoint.url() + ": health returned HTTP " +
                    std::to_string(res->status));
  }
  try {
    const auto doc = json::parse(res->body);
    return HealthStatus{doc.at("status").get<std::string>(),
                        doc.at("model").get<std::string>()};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kProtocolError,
                std::string("malformed health body: ") + e.what());
  }
}

RemoteScorer::RemoteScorer(Endpoint endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {}

std::string RemoteScorer::tag() const { return "remote:" + endpoint_.url(); }

std::vector<TokenLogits> RemoteScorer::logits(
    std::span<const Prompt> prompts) {
  RemoteStats call;
  auto merge = [&] {
    std::lock_guard lock(mu_);
    stats_.batch_sizes.insert(stats_.batch_sizes.end(),
                              call.batch_sizes.begin(), call.batch_sizes.end());
    stats_.requests += call.requests;
    stats_.retries.insert(stats_.retries.end(), call.retries.begin(),
                          call.retries.end());
  };
  try {
    auto out = remote_score(endpoint_, prompts, options_, &call);
    merge();
    return out;
  } catch (...) {
    merge();
    throw;
  }
}

RemoteStats RemoteScorer::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

std::vector<ConformanceResult> run_conformance(
    const Endpoint& endpoint, std::string_view fixture_json,
    std::chrono::milliseconds timeout) {
  const json fixture = json::parse(fixture_json);
  std::vector<ConformanceResult> results;
  auto client = make_client(endpoint, timeout);

  {
    ConformanceResult r{"health", false, {}};
    try {
      const auto health = remote_health(endpoint, timeout);
      r.passed = health.status == "ok";
      r.detail = "status=" + health.status + " model=" + health.model;
    } catch (const Error& e) {
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }

  const std::string path = endpoint.base_path + std::string(kScorePath);
  for (const auto& c : fixture.at("cases")) {
    ConformanceResult r{c.at("name").get<std::string>(), false, {}};
    const auto& pairs = c.at("pairs");
    const std::string body = json{{"pairs", pairs}}.dump();
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      r.detail = "transport: " + httplib::to_string(res.error());
    } else if (res->status != 200) {
      r.detail = "HTTP " + std::to_string(res->status);
    } else {
      try {
        const auto logits = decode_score_response(res->body, pairs.size());
        r.passed = true;
        r.detail = std::to_string(logits.size()) + " finite logits";
        if (c.contains("duplicates")) {
          for (const auto& dup : c["duplicates"]) {
            const auto a = dup.at(0).get<std::size_t>();
            const auto b = dup.at(1).get<std::size_t>();
            if (!(logits.at(a) == logits.at(b))) {
              r.passed = false;
              r.detail = "duplicate pairs " + std::to_string(a) + " and " +
                         std::to_string(b) + " scored differently";
            }
          }
        }
      } catch (const Error& e) {
        r.detail = e.what();
      }
    }
    results.push_back(std::move(r));
  }

  if (fixture.contains("malformed_requests")) {
    for (const auto& m : fixture["malformed_requests"]) {
      ConformanceResult r{m.at("name").get<std::string>(), false, {}};
      auto res = client.Post(path, m.at("body").get<std::string>(),
                             "application/json");
      if (!res) {
        r.detail = "transport: " + httplib::to_string(res.error());
      } else {
        r.passed = res->status == 400;
        r.detail = "HTTP " + std::to_string(res->status) + " (want 400)";
      }
      results.push_back(std::move(r));
    }
  }
  return results;
}

}  // namespace shoprank
