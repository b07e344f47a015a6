// Copyright 2026 The HybridEVS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hevs {

enum class Errc {
  kLengthMismatch,
  kRangeError,
  kDecodeError,
  kUnsupportedBitDepth,
  kDimensionMismatch,
  kTooSmall,
  kMissingResult,
  kExtraResult,
  kInvalidPattern,
  kInvalidArgument,
  kIoError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kRangeError: return "RangeError";
    case Errc::kDecodeError: return "DecodeError";
    case Errc::kUnsupportedBitDepth: return "UnsupportedBitDepth";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kTooSmall: return "TooSmall";
    case Errc::kMissingResult: return "MissingResult";
    case Errc::kExtraResult: return "ExtraResult";
    case Errc::kInvalidPattern: return "InvalidPattern";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIoError: return "IoError";
  }
  return "UnknownError";
}

/// All toolkit errors carry a stable code plus a one-line human message.
/// what() is "<CodeName>: <detail>" so callers can log it verbatim.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace hevs
