// Copyright 2026 The qident Authors
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

#ifndef QIDENT_ERRORS_H
#define QIDENT_ERRORS_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qident {

enum class ErrorCode {
    kNonHermitianInput,
    kNotPositive,
    kBadSystemIndex,
    kDimensionMismatch,
    kInvalidDimension,
    kInfeasibleCoefficients,
    kZeroSamples,
    kNumericalUnderflow,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kNonHermitianInput:
            return "NonHermitianInput";
        case ErrorCode::kNotPositive:
            return "NotPositive";
        case ErrorCode::kBadSystemIndex:
            return "BadSystemIndex";
        case ErrorCode::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::kInvalidDimension:
            return "InvalidDimension";
        case ErrorCode::kInfeasibleCoefficients:
            return "InfeasibleCoefficients";
        case ErrorCode::kZeroSamples:
            return "ZeroSamples";
        case ErrorCode::kNumericalUnderflow:
            return "NumericalUnderflow";
    }
    return "Unknown";
}

}  // namespace qident

#endif  // QIDENT_ERRORS_H
