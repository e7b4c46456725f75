//
// Copyright 2026 The mmrobust Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "mmrobust/error.h"

namespace mmrobust {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownMethod: return "UnknownMethod";
    case ErrorCode::kInputTooSmall: return "InputTooSmall";
    case ErrorCode::kMissingAsset: return "MissingAsset";
    case ErrorCode::kCodecError: return "CodecError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNoEligibleWord: return "NoEligibleWord";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyQuerySet: return "EmptyQuerySet";
    case ErrorCode::kZeroCleanScore: return "ZeroCleanScore";
    case ErrorCode::kZeroBaseline: return "ZeroBaseline";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyHypothesis: return "EmptyHypothesis";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kMissingImage: return "MissingImage";
    case ErrorCode::kMalformedCaptions: return "MalformedCaptions";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kMissingLabels: return "MissingLabels";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kAdapterFailure: return "AdapterFailure";
    case ErrorCode::kIoError: return "IOError";
    case ErrorCode::kServiceUnavailable: return "ServiceUnavailable";
    case ErrorCode::kServiceRejected: return "ServiceRejected";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnknownMethod:
      return ErrorCategory::kUsage;
    case ErrorCode::kServiceUnavailable:
    case ErrorCode::kServiceRejected:
    case ErrorCode::kMalformedResponse:
      return ErrorCategory::kService;
    default:
      return ErrorCategory::kData;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace mmrobust
