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
#include <string>

#include "fmcwsar/echo_simulator.hpp"
#include "fmcwsar/radar_model.hpp"

namespace fmcwsar {

enum class MethodSelection { kConventional, kProposed, kBoth };

struct RunConfig {
    RadarParams radar;
    Scene scene;
    LeakageModel leakage;
    /// False when the phase-noise seed follows the run seed.
    bool phase_noise_seed_explicit = false;
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    MethodSelection method = MethodSelection::kBoth;
    std::filesystem::path output_dir = "out";
};

/// Parses the nested YAML run description. Unknown keys are rejected with kInvalidParam naming the key path,
/// malformed YAML with kFormatError. Radar parameters are validated.
RunConfig ParseConfig(const std::string& text);
RunConfig LoadConfig(const std::filesystem::path& path);

/// Sets the run seed; the phase-noise seed follows unless the config pinned it.
void ApplySeed(RunConfig& cfg, std::uint64_t seed);

/// Creates the directory if needed and probes that a file can be created in it (kIoError with the path).
void PrepareOutputDir(const std::filesystem::path& dir);

}  // namespace fmcwsar
