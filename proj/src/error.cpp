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
#include "fmcwsar/error.hpp"

namespace fmcwsar {

std::string_view ToString(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidParam: return "InvalidParam";
        case ErrorCode::kNegativeInput: return "NegativeInput";
        case ErrorCode::kDimensionOverflow: return "DimensionOverflow";
        case ErrorCode::kBadLength: return "BadLength";
        case ErrorCode::kNoPeak: return "NoPeak";
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
        case ErrorCode::kZeroVelocity: return "ZeroVelocity";
        case ErrorCode::kAllZero: return "AllZero";
        case ErrorCode::kTooFewBins: return "TooFewBins";
        case ErrorCode::kNoCrossing: return "NoCrossing";
        case ErrorCode::kNoSidelobe: return "NoSidelobe";
        case ErrorCode::kIoError: return "IoError";
        case ErrorCode::kFormatError: return "FormatError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ToString(code)) + ": " + message), code_(code) {}

Error Error::InvalidParam(std::string field, const std::string& reason) {
    Error e(ErrorCode::kInvalidParam, field + ": " + reason);
    e.field_ = std::move(field);
    return e;
}

Error Error::WithSweep(std::size_t m) const {
    std::string msg = what();
    auto colon = msg.find(": ");
    Error e(code_, (colon == std::string::npos ? msg : msg.substr(colon + 2)) + " (sweep " + std::to_string(m) + ")");
    e.field_ = field_;
    e.sweep_ = m;
    return e;
}

}  // namespace fmcwsar
