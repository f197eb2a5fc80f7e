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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fmcwsar/matrix.hpp"
#include "fmcwsar/radar_model.hpp"

namespace fmcwsar {

struct PointTarget {
    double x_along = 0.0;
    double y_cross = 1000.0;
    double amplitude = 1.0;
};

using Scene = std::vector<PointTarget>;

struct PhaseNoiseParams {
    double rms = 0.0;
    double corner_hz = 100e3;
    std::uint64_t seed = 0;
};

/// TX-RX coupling tone. Its beat frequency sits near DC because the coupling path is centimetres long.
struct LeakageModel {
    double amplitude = 0.0;
    double beat_freq = 1e3;
    double static_phase = 0.0;
    PhaseNoiseParams phase_noise;
};

/// Raw deramped beat samples x[n, m]: N rows (fast time) by M columns (sweeps).
struct DataCube {
    ComplexMatrix data;
    ValidatedParams params;
};

void ValidateTarget(const PointTarget& t);
void ValidateLeakage(const ValidatedParams& p, const LeakageModel& leak);
/// Every target must be valid and beat above the leakage search band.
void ValidateScene(const ValidatedParams& p, const Scene& scene);

/// Stateless 64-bit mixing used to derive independent RNG streams from (seed, stream, purpose).
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t purpose);

/// Gaussian white noise through a single-pole low-pass at corner_hz (sample rate fs), rescaled so the sample
/// RMS equals pn.rms exactly. Deterministic in (pn.seed, stream_id).
std::vector<double> PhaseNoiseSequence(const PhaseNoiseParams& pn, std::size_t count, std::uint64_t stream_id,
                                       double fs);

struct PhaseSample {
    double beat_hz;
    double psi;
    bool in_beam;
};

/// Stop-and-go geometry: platform at u_m = v * T * (m - M/2), slant range R_m, two-way carrier phase -4 pi R / lambda.
PhaseSample TargetPhaseHistory(const ValidatedParams& p, const PointTarget& tgt, std::size_t m);

std::vector<cdouble> SimulateSweep(const ValidatedParams& p, const Scene& scene, const LeakageModel& leak,
                                   std::size_t m, double noise_sigma, std::uint64_t seed);

/// Sweeps are generated independently from per-sweep RNG streams, so the cube does not depend on
/// the parallel schedule.
DataCube SimulateCube(const ValidatedParams& p, const Scene& scene, const LeakageModel& leak, double noise_sigma,
                      std::uint64_t seed);

}  // namespace fmcwsar
