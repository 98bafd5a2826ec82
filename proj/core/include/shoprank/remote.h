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

#ifndef SHOPRANK_REMOTE_H_
#define SHOPRANK_REMOTE_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoprank/scorer.h"

namespace shoprank {

// http://host:port[/base]. Only plain http is supported.
struct Endpoint {
  std::string host_port;  // "http://host:port"
  std::string base_path;  // "" or "/prefix", no trailing slash

  // Throws Error(kInvalidArgument) on an unusable URL.
  static Endpoint parse(std::string_view url);
  std::string url() const { return host_port + base_path; }
};

struct RemoteOptions {
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  // Extra attempts per batch after the first one fails.
  std::size_t retries = 3;
  std::chrono::milliseconds timeout{30000};
  // Delay before retry r (1-based) is base * factor^(r-1), scaled by a
  // uniform jitter in [1 - jitter, 1 + jitter].
  std::chrono::milliseconds backoff_base{250};
  double backoff_factor = 2.0;
  double jitter = 0.2;
  std::uint64_t seed = 0x5eed;
};

struct RetryEvent {
  std::size_t batch_index = 0;
  std::size_t attempt = 0;  // 1-based retry number
  std::chrono::milliseconds delay{0};
  std::string reason;
};

struct RemoteStats {
  // Requested batch sizes, in batch order.
  std::vector<std::size_t> batch_sizes;
  std::size_t requests = 0;
  // Sorted by (batch_index, attempt).
  std::vector<RetryEvent> retries;
};

// Request body for POST /v1/score.
std::string encode_score_request(std::span<const Prompt> prompts);

// Parses a /v1/score response body. Throws Error(kProtocolError) for non-JSON
// bodies, a wrong schema, a length other than `expected`, or non-finite
// values.
std::vector<TokenLogits> decode_score_response(std::string_view body,
                                               std::size_t expected);

// Scores prompts against a /v1/score server. Prompts are sent in batches of
// at most batch_size with at most max_in_flight batches outstanding. 5xx
// replies and transport failures are retried with exponential backoff; other
// non-200 replies and malformed bodies fail immediately with kProtocolError.
// Exhausted retries throw kScorerUnavailable. Results are in input order.
std::vector<TokenLogits> remote_score(const Endpoint& endpoint,
                                      std::span<const Prompt> prompts,
                                      const RemoteOptions& options,
                                      RemoteStats* stats = nullptr);

struct HealthStatus {
  std::string status;
  std::string model;
};

// GET /v1/health. Throws kScorerUnavailable if the server cannot be reached
// or is not ready, kProtocolError on a malformed body.
HealthStatus remote_health(const Endpoint& endpoint,
                           std::chrono::milliseconds timeout);

class RemoteScorer final : public Scorer {
 public:
  RemoteScorer(Endpoint endpoint, RemoteOptions options);

  std::string tag() const override;
  std::vector<TokenLogits> logits(std::span<const Prompt> prompts) override;

  // Accumulated over every logits() call.
  RemoteStats stats() const;

 private:
  Endpoint endpoint_;
  RemoteOptions options_;
  mutable std::mutex mu_;
  RemoteStats stats_;
};

// One outcome of the protocol conformance suite.
struct ConformanceResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs the protocol conformance cases in `fixture_json` (see
// tests/fixtures/protocol/conformance.json) against a live server: health
// shape, response length equality, finiteness and identical logits for
// duplicate pairs.
std::vector<ConformanceResult> run_conformance(
    const Endpoint& endpoint, std::string_view fixture_json,
    std::chrono::milliseconds timeout);

}  // namespace shoprank

#endif  // SHOPRANK_REMOTE_H_
