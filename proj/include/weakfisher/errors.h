// Copyright 2026 The weakfisher Authors
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

#ifndef WEAKFISHER_ERRORS_H
#define WEAKFISHER_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace weakfisher {

enum class ErrorCode {
    InvalidInput,
    BasisMismatch,
    DegenerateBranch,
    IndeterminateFp,
    GridTooCoarse,
    StepUnstable,
    NegativeProbability,
    NonIdentifiable,
    UnsupportedCoupling,
};

std::string_view error_name(ErrorCode code);

/// Raised by every module for contract violations and numerical failures.
/// `what()` is prefixed with the error name, e.g. "GridTooCoarse: ...".
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &detail);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace weakfisher

#endif
