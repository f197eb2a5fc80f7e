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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fmcwsar/aspc.hpp"
#include "fmcwsar/metrics.hpp"
#include "fmcwsar/sar_processor.hpp"

namespace fmcwsar::io {

inline constexpr double kPgmBlackDb = -80.0;

/// Gray level of a dB value: 0 dB -> 255, <= -80 dB -> 0, linear in between.
std::uint8_t GrayOfDb(double db);

/// Binary P5 PGM, one row per range bin, one column per azimuth sample.
void WritePgm(std::ostream& os, const SarImage& img);
/// Comma-separated dB matrix, one line per range bin, shortest round-trip decimal formatting.
void WriteCsv(std::ostream& os, const SarImage& img);

std::string FormatDouble(double v);

/// key = value lines; `#` lines are comments.
std::string FormatReport(const MetricsReport& rep, std::uint64_t seed);
std::string FormatComparison(const PipelineComparison& cmp, std::uint64_t seed);
std::string FormatEstimates(const std::vector<LeakageEstimate>& estimates);
std::map<std::string, std::string> ParseKeyValues(const std::string& text);

/// Writes `contents` to `path`, throwing kIoError with the path on failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& contents);
void WriteBinaryFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace fmcwsar::io
