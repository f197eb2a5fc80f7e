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
#include <string>
#include <vector>

#include "fmcwsar/echo_simulator.hpp"
#include "fmcwsar/sar_processor.hpp"

namespace fmcwsar {

/// Inclusive bin range [lo, hi].
struct BinInterval {
    std::size_t lo;
    std::size_t hi;
};

inline constexpr std::size_t kMinNoiseBins = 16;
inline constexpr std::size_t kTargetExclusionBins = 10;

/// Median of the dB samples outside every exclusion interval. Throws kTooFewBins below kMinNoiseBins samples.
double NoiseFloor(std::span<const double> profile_db, std::span<const BinInterval> exclusions = {});

/// -3 dB impulse response width of a linear-magnitude cut, linearly interpolated on each side, in axis units.
double Irw(std::span<const double> magnitude, std::size_t peak_bin, double axis_scale);

/// Highest sidelobe beyond the first nulls relative to the peak, in dB.
double Pslr(std::span<const double> magnitude, std::size_t peak_bin);

/// Shannon entropy (nats) of the intensity distribution; pixels at the display floor count as empty.
double ImageEntropy(const SarImage& img);
/// Same, restricted to the inclusive row interval.
double ImageEntropy(const SarImage& img, BinInterval rows);

struct MetricsReport {
    Method method_tag = Method::kConventional;
    double noise_floor_db = 0.0;
    double target_peak_db = 0.0;
    double snr_db = 0.0;
    double irw_range_m = 0.0;
    double irw_azimuth_m = 0.0;
    double pslr_db = 0.0;
    double pslr_range_db = 0.0;
    double pslr_azimuth_db = 0.0;
    double entropy = 0.0;
    double leakage_residual_db = 0.0;
    double target_range_m = 0.0;
    std::size_t target_range_bin = 0;
    std::size_t target_azimuth_bin = 0;
    bool rcmc_applied = false;
    bool azimuth_compressed = false;
};

/// Pixel location of a focused scene target: nearest range row and azimuth column.
struct PixelIndex {
    std::size_t range_bin;
    std::size_t azimuth_bin;
};

PixelIndex ExpectedTargetPixel(const SarImage& img, const ValidatedParams& p, const PointTarget& tgt);

/// Brightest pixel within +-radius cells of the expected target location.
PixelIndex FindTargetPeak(const SarImage& img, const ValidatedParams& p, const PointTarget& tgt,
                          std::size_t radius = 3);

/// Range where the imaged scene starts: the leakage search band plus kTargetExclusionBins cells.
double ImagingRangeStart(const ValidatedParams& p);
/// First image row beyond ImagingRangeStart.
std::size_t ImagingRowsBegin(const SarImage& img, const ValidatedParams& p);

/// Rows used for noise-floor estimation: positive ranges beyond the leakage band (plus margin) up to the
/// maximum unambiguous range, minus kTargetExclusionBins around every scene target.
std::vector<std::size_t> NoiseRows(const SarImage& img, const ValidatedParams& p, const Scene& scene);

/// Rows of the imaged scene: ImagingRowsBegin up to the maximum unambiguous range.
BinInterval SceneRows(const SarImage& img, const ValidatedParams& p);

/// Quality figures of one pipeline run; IRW/PSLR are measured on the strongest scene target and are NaN when
/// the cut does not allow a measurement. Entropy covers SceneRows, so the leakage band and the negative
/// half of a complex image do not enter it. Requires a non-empty scene.
MetricsReport ComputeMetrics(const PipelineResult& run, const ValidatedParams& p, const Scene& scene);

struct MetricsDelta {
    double noise_floor_reduction_db;   // conventional - proposed
    double snr_gain_db;                // proposed - conventional
    double entropy_reduction;          // conventional - proposed
    double leakage_residual_reduction_db;
    double irw_range_change_m;         // proposed - conventional
    double irw_azimuth_change_m;
    double pslr_change_db;
    double target_level_difference_db; // unnormalized focused peak, proposed over conventional
    bool peak_position_match;
};

struct PipelineComparison {
    MetricsReport conventional;
    MetricsReport proposed;
    MetricsDelta delta;
};

PipelineComparison ComparePipelines(const DataCube& cube, const Scene& scene);
PipelineComparison ComparePipelines(const PipelineResult& conventional, const PipelineResult& proposed,
                                    const ValidatedParams& p, const Scene& scene);

}  // namespace fmcwsar
