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

#include <iosfwd>
#include <string>
#include <vector>

#include "fmcwsar/error.hpp"

namespace fmcwsar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPipeline = 1;
inline constexpr int kExitInput = 2;

int ExitCodeFor(ErrorCode code);

/// Entry point behind the `fmcwsar` binary. args[0] is the program name.
/// Subcommands: simulate | process | compare | report; global flags --config, --seed, --threads, --verbose.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmcwsar::cli
