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
#include <span>

#include "fmcwsar/matrix.hpp"

/// Thin wrappers over FFTW. Plans are created once per (length, kind) under a lock and executed with the
/// new-array interface, so any number of threads may transform concurrently. FFTW_ESTIMATE keeps the chosen
/// algorithm, and therefore the output bits, identical from run to run.
namespace fmcwsar::fft {

/// Unnormalized forward DFT, X[k] = sum x[n] exp(-j 2 pi k n / L). `in` and `out` may alias.
void Forward(std::span<const cdouble> in, std::span<cdouble> out);

/// Unnormalized inverse DFT (no 1/L factor). `in` and `out` may alias.
void Inverse(std::span<const cdouble> in, std::span<cdouble> out);

/// Real-to-complex forward DFT; `out` holds in.size()/2 + 1 bins.
void ForwardReal(std::span<const double> in, std::span<cdouble> out);

bool IsPowerOfTwo(std::size_t n);

}  // namespace fmcwsar::fft
