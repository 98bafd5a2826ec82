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

#ifndef SHOPRANK_ERROR_H_
#define SHOPRANK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace shoprank {

// Every failure surfaced by the library carries one of these kinds. The
// names are stable: the CLI prints them verbatim in its diagnostics.
enum class ErrorKind {
  kIo,
  kInvalidArgument,
  kEmptyInput,
  // catalog
  kMissingColumn,
  kDuplicateProductId,
  kMalformedRow,
  kUnknownLabel,
  kConflictingQueryText,
  // scorer
  kNonFiniteLogit,
  kScorerUnavailable,
  kProtocolError,
  // rank
  kMixedQueryIds,
  kDuplicateProduct,
  kMalformedLine,
  // eval
  kNegativeGain,
  kInvalidGainMap,
  kQueryIdMismatch,
  kMissingJudgments,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const noexcept {
    return error_kind_name(kind_);
  }
  // The message without the "Kind: " prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace shoprank

#endif  // SHOPRANK_ERROR_H_
