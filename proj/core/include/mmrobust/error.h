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

#ifndef MMROBUST_ERROR_H_
#define MMROBUST_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmrobust {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownMethod,
  kInputTooSmall,
  kMissingAsset,
  kCodecError,
  kEmptyInput,
  kNoEligibleWord,
  kZeroVector,
  kDimensionMismatch,
  kEmptyQuerySet,
  kZeroCleanScore,
  kZeroBaseline,
  kLengthMismatch,
  kEmptyHypothesis,
  kCorpusTooSmall,
  kMissingImage,
  kMalformedCaptions,
  kMalformedManifest,
  kMissingLabels,
  kEmptyTree,
  kAdapterFailure,
  kIoError,
  kServiceUnavailable,
  kServiceRejected,
  kMalformedResponse,
};

// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { kUsage, kData, kService };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mmrobust

#endif  // MMROBUST_ERROR_H_
