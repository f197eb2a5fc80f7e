/*
* fmcwsar - FMCW SAR leakage-mitigating image synthesis toolkit
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fmcwsar {

enum class ErrorCode {
    kInvalidParam,
    kNegativeInput,
    kDimensionOverflow,
    kBadLength,
    kNoPeak,
    kLengthMismatch,
    kDimensionMismatch,
    kZeroVelocity,
    kAllZero,
    kTooFewBins,
    kNoCrossing,
    kNoSidelobe,
    kIoError,
    kFormatError,
};

std::string_view ToString(ErrorCode code);

/// Single exception type for the toolkit. The code identifies the failure class; `field` names the offending
/// parameter for kInvalidParam and `sweep` carries the slow-time index for per-sweep failures.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }
    std::optional<std::size_t> sweep() const noexcept { return sweep_; }

    static Error InvalidParam(std::string field, const std::string& reason);
    Error WithSweep(std::size_t m) const;

private:
    ErrorCode code_;
    std::string field_;
    std::optional<std::size_t> sweep_;
};

}  // namespace fmcwsar
