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

#include "weakfisher/errors.h"

namespace weakfisher {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput:
            return "InvalidInput";
        case ErrorCode::BasisMismatch:
            return "BasisMismatch";
        case ErrorCode::DegenerateBranch:
            return "DegenerateBranch";
        case ErrorCode::IndeterminateFp:
            return "IndeterminateFp";
        case ErrorCode::GridTooCoarse:
            return "GridTooCoarse";
        case ErrorCode::StepUnstable:
            return "StepUnstable";
        case ErrorCode::NegativeProbability:
            return "NegativeProbability";
        case ErrorCode::NonIdentifiable:
            return "NonIdentifiable";
        case ErrorCode::UnsupportedCoupling:
            return "UnsupportedCoupling";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {
}

}  // namespace weakfisher
