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
#include <functional>

namespace fmcwsar {

/// Caps the worker count used by the parallel stages; 0 selects hardware concurrency.
void SetMaxThreads(unsigned threads);
unsigned MaxThreads();

/// Runs body(i) for i in [0, count) on up to MaxThreads() workers with static contiguous chunking.
/// Bodies must only write to state owned by index i. The first exception thrown by any body is rethrown
/// after all workers join (lowest index wins, so the reported failure does not depend on scheduling).
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fmcwsar
