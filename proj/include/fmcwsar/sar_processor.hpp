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
#include <string_view>
#include <vector>

#include "fmcwsar/aspc.hpp"
#include "fmcwsar/echo_simulator.hpp"
#include "fmcwsar/matrix.hpp"
#include "fmcwsar/radar_model.hpp"

namespace fmcwsar {

enum class Method { kConventional, kProposed };

std::string_view ToString(Method m);

/// Range-compressed data, K_r range bins by M sweeps (or Doppler bins after the azimuth FFT).
/// Row i holds beat-frequency index first_bin + i on the range_fft_len grid; complex input keeps the full
/// (-fs/2, fs/2] band in increasing order, real input keeps bins 0..L/2. Negative bins map to negative range.
struct RangeProfileMatrix {
    ComplexMatrix data;
    std::vector<double> range_axis;
    std::ptrdiff_t first_bin = 0;
    double prf = 0.0;
};

struct SarImage {
    RealMatrix db;
    std::vector<double> range_axis;
    std::vector<double> azimuth_axis;
    Method method_tag = Method::kConventional;
};

inline constexpr double kImageFloorDb = -120.0;

std::vector<double> MakeWindow(WindowKind kind, std::size_t n);

/// Range spacing of one bin of the range FFT grid.
double RangeBinSpacing(const ValidatedParams& p);

RangeProfileMatrix RangeCompress(const ComplexMatrix& data, const ValidatedParams& p);
RangeProfileMatrix RangeCompress(const RealMatrix& data, const ValidatedParams& p);

/// Forward (or inverse, 1/M-normalized) DFT along slow time for every range bin.
void AzimuthFft(ComplexMatrix& data);
void AzimuthIfft(ComplexMatrix& data);

/// Signed Doppler frequency of azimuth FFT bin j out of M.
double DopplerOfBin(std::size_t j, std::size_t m, double prf);

/// Azimuth FM rate 2 V^2 / (lambda R0).
double AzimuthFmRate(const ValidatedParams& p, double r0);

/// Range migration lambda^2 f^2 R0 / (8 V^2) of a target at closest range R0 seen at Doppler f.
double RangeMigration(const ValidatedParams& p, double f_az, double r0);

/// Largest migration the recorded signal can show: per gate beyond the leakage band, the Doppler extent is
/// capped by the synthetic aperture (Ka T_aperture / 2), the beam and prf / 2.
double MaxSignalMigration(const ValidatedParams& p, std::span<const double> r0_axis);

enum class RcmcMode { kAuto, kForce };

struct RcmcResult {
    ComplexMatrix data;
    bool applied = false;
    double max_migration_m = 0.0;
};

/// Doppler-domain range cell migration correction with a Hann-weighted truncated sinc of rcmc_kernel_taps.
/// In kAuto mode the matrix passes through untouched when MaxSignalMigration is below half a range cell.
RcmcResult Rcmc(const RangeProfileMatrix& rd, const ValidatedParams& p, RcmcMode mode = RcmcMode::kAuto);

/// Multiplies each gate by the azimuth matched filter and returns to slow time. Gates at R0 <= 0 carry no
/// azimuth chirp and pass with unit gain.
ComplexMatrix AzimuthCompress(const RangeProfileMatrix& rd, const ValidatedParams& p);

SarImage FormImage(const ComplexMatrix& focused, const ValidatedParams& p, std::vector<double> range_axis,
                   Method tag);

struct PipelineResult {
    SarImage image;
    ComplexMatrix focused;
    std::ptrdiff_t first_bin = 0;
    std::vector<LeakageEstimate> estimates;  // proposed pipeline only
    bool rcmc_applied = false;
    bool azimuth_compressed = false;
    double max_migration_m = 0.0;
};

PipelineResult RunConventional(const DataCube& cube);
PipelineResult RunProposed(const DataCube& cube);
PipelineResult RunPipeline(const DataCube& cube, Method method);

}  // namespace fmcwsar
