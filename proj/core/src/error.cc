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

#include "shoprank/error.h"

namespace shoprank {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return "IoError";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kEmptyInput:
      return "EmptyInput";
    case ErrorKind::kMissingColumn:
      return "MissingColumn";
    case ErrorKind::kDuplicateProductId:
      return "DuplicateProductId";
    case ErrorKind::kMalformedRow:
      return "MalformedRow";
    case ErrorKind::kUnknownLabel:
      return "UnknownLabel";
    case ErrorKind::kConflictingQueryText:
      return "ConflictingQueryText";
    case ErrorKind::kNonFiniteLogit:
      return "NonFiniteLogit";
    case ErrorKind::kScorerUnavailable:
      return "ScorerUnavailable";
    case ErrorKind::kProtocolError:
      return "ProtocolError";
    case ErrorKind::kMixedQueryIds:
      return "MixedQueryIds";
    case ErrorKind::kDuplicateProduct:
      return "DuplicateProduct";
    case ErrorKind::kMalformedLine:
      return "MalformedLine";
    case ErrorKind::kNegativeGain:
      return "NegativeGain";
    case ErrorKind::kInvalidGainMap:
      return "InvalidGainMap";
    case ErrorKind::kQueryIdMismatch:
      return "QueryIdMismatch";
    case ErrorKind::kMissingJudgments:
      return "MissingJudgments";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind),
      detail_(message) {}

}  // namespace shoprank
