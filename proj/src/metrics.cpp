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
#include "fmcwsar/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fmcwsar/error.hpp"

namespace fmcwsar {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double Median(std::vector<double>& v) {
    const std::size_t n = v.size();
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

std::vector<double> Magnitude(std::span<const double> db) {
    std::vector<double> mag(db.size());
    std::transform(db.begin(), db.end(), mag.begin(), [](double d) { return std::pow(10.0, d / 20.0); });
    return mag;
}

std::size_t NearestRow(const std::vector<double>& axis, double r) {
    auto it = std::lower_bound(axis.begin(), axis.end(), r);
    if (it == axis.end()) return axis.size() - 1;
    if (it == axis.begin()) return 0;
    auto prev = it - 1;
    return static_cast<std::size_t>((r - *prev <= *it - r ? prev : it) - axis.begin());
}

template <class F>
double TryMeasure(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::kNoCrossing || e.code() == ErrorCode::kNoSidelobe) return kNaN;
        throw;
    }
}

}  // namespace

double NoiseFloor(std::span<const double> profile_db, std::span<const BinInterval> exclusions) {
    std::vector<double> kept;
    kept.reserve(profile_db.size());
    for (std::size_t i = 0; i < profile_db.size(); ++i) {
        const bool excluded =
            std::any_of(exclusions.begin(), exclusions.end(), [i](const BinInterval& b) { return i >= b.lo && i <= b.hi; });
        if (!excluded) kept.push_back(profile_db[i]);
    }
    if (kept.size() < kMinNoiseBins) {
        throw Error(ErrorCode::kTooFewBins, std::to_string(kept.size()) + " bins left after exclusions, need " +
                                                std::to_string(kMinNoiseBins));
    }
    return Median(kept);
}

double Irw(std::span<const double> magnitude, std::size_t peak_bin, double axis_scale) {
    const std::size_t n = magnitude.size();
    if (n < 3 || peak_bin == 0 || peak_bin + 1 >= n) {
        throw Error(ErrorCode::kNoCrossing, "peak on the boundary of a " + std::to_string(n) + "-sample cut");
    }
    const double peak = magnitude[peak_bin];
    const double thr = peak / std::sqrt(2.0);
    std::size_t l = peak_bin;
    while (l > 0 && magnitude[l - 1] >= thr) --l;
    std::size_t r = peak_bin;
    while (r + 1 < n && magnitude[r + 1] >= thr) ++r;
    if (l == 0 || r + 1 == n) {
        throw Error(ErrorCode::kNoCrossing, "cut never falls 3 dB below its peak");
    }
    // Crossing between l-1 (below) and l (at or above), and between r and r+1.
    const double left = static_cast<double>(l) - (magnitude[l] - thr) / (magnitude[l] - magnitude[l - 1]);
    const double right = static_cast<double>(r) + (magnitude[r] - thr) / (magnitude[r] - magnitude[r + 1]);
    return (right - left) * axis_scale;
}

double Pslr(std::span<const double> magnitude, std::size_t peak_bin) {
    const std::size_t n = magnitude.size();
    if (peak_bin >= n || !(magnitude[peak_bin] > 0)) {
        throw Error(ErrorCode::kNoSidelobe, "no mainlobe peak");
    }
    std::size_t l = peak_bin;
    while (l > 0 && magnitude[l - 1] < magnitude[l]) --l;
    std::size_t r = peak_bin;
    while (r + 1 < n && magnitude[r + 1] < magnitude[r]) ++r;
    double side = 0.0;
    for (std::size_t i = 0; i < l; ++i) side = std::max(side, magnitude[i]);
    for (std::size_t i = r + 1; i < n; ++i) side = std::max(side, magnitude[i]);
    if (!(side > 0)) {
        throw Error(ErrorCode::kNoSidelobe, "nothing beyond the first nulls");
    }
    return 20.0 * std::log10(side / magnitude[peak_bin]);
}

double ImageEntropy(const SarImage& img) {
    if (img.db.rows() == 0) {
        throw Error(ErrorCode::kAllZero, "empty image");
    }
    return ImageEntropy(img, {0, img.db.rows() - 1});
}

double ImageEntropy(const SarImage& img, BinInterval rows) {
    if (rows.lo > rows.hi || rows.hi >= img.db.rows()) {
        throw Error(ErrorCode::kDimensionMismatch, "entropy row interval outside the image");
    }
    auto each = [&](auto&& f) {
        for (std::size_t c = 0; c < img.db.cols(); ++c) {
            for (std::size_t r = rows.lo; r <= rows.hi; ++r) {
                if (img.db(r, c) > kImageFloorDb) f(std::pow(10.0, img.db(r, c) / 10.0));
            }
        }
    };
    double total = 0.0;
    each([&](double i) { total += i; });
    if (!(total > 0)) {
        throw Error(ErrorCode::kAllZero, "image has no pixel above the display floor");
    }
    double h = 0.0;
    each([&](double i) {
        const double q = i / total;
        h -= q * std::log(q);
    });
    return std::max(h, 0.0);
}

PixelIndex ExpectedTargetPixel(const SarImage& img, const ValidatedParams& p, const PointTarget& tgt) {
    const std::size_t cols = img.db.cols();
    std::size_t az = 0;
    const double cell = p->v_platform * p->t_sweep;
    if (cols > 1 && cell > 0) {
        const double idx = std::round(tgt.x_along / cell + static_cast<double>(cols) / 2.0);
        az = static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(cols - 1)));
    }
    return {NearestRow(img.range_axis, tgt.y_cross), az};
}

PixelIndex FindTargetPeak(const SarImage& img, const ValidatedParams& p, const PointTarget& tgt,
                          std::size_t radius) {
    const PixelIndex guess = ExpectedTargetPixel(img, p, tgt);
    const std::size_t rows = img.db.rows();
    const std::size_t cols = img.db.cols();
    PixelIndex best = guess;
    double best_db = -std::numeric_limits<double>::infinity();
    for (std::size_t c = guess.azimuth_bin >= radius ? guess.azimuth_bin - radius : 0;
         c <= std::min(cols - 1, guess.azimuth_bin + radius); ++c) {
        for (std::size_t r = guess.range_bin >= radius ? guess.range_bin - radius : 0;
             r <= std::min(rows - 1, guess.range_bin + radius); ++r) {
            if (img.db(r, c) > best_db) {
                best_db = img.db(r, c);
                best = {r, c};
            }
        }
    }
    return best;
}

double ImagingRangeStart(const ValidatedParams& p) {
    return RangeOfBeatFrequency(p, p->leak_search_max_hz) + static_cast<double>(kTargetExclusionBins) * RangeBinSpacing(p);
}

std::size_t ImagingRowsBegin(const SarImage& img, const ValidatedParams& p) {
    const double r_lo = ImagingRangeStart(p);
    return static_cast<std::size_t>(
        std::upper_bound(img.range_axis.begin(), img.range_axis.end(), r_lo) - img.range_axis.begin());
}

BinInterval SceneRows(const SarImage& img, const ValidatedParams& p) {
    const std::size_t lo = ImagingRowsBegin(img, p);
    const double r_hi = MaxUnambiguousRange(p);
    std::size_t hi = lo;
    while (hi + 1 < img.range_axis.size() && img.range_axis[hi + 1] <= r_hi) ++hi;
    if (lo >= img.range_axis.size() || img.range_axis[lo] > r_hi) {
        throw Error(ErrorCode::kTooFewBins, "no image rows between the leakage band and the maximum range");
    }
    return {lo, hi};
}

std::vector<std::size_t> NoiseRows(const SarImage& img, const ValidatedParams& p, const Scene& scene) {
    const double r_lo = ImagingRangeStart(p);
    const double r_hi = MaxUnambiguousRange(p);
    std::vector<std::size_t> target_rows;
    for (const auto& t : scene) target_rows.push_back(NearestRow(img.range_axis, t.y_cross));
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < img.range_axis.size(); ++i) {
        const double r = img.range_axis[i];
        if (!(r > r_lo && r <= r_hi)) continue;
        const bool near_target = std::any_of(target_rows.begin(), target_rows.end(), [i](std::size_t t) {
            return (i > t ? i - t : t - i) <= kTargetExclusionBins;
        });
        if (!near_target) rows.push_back(i);
    }
    return rows;
}

MetricsReport ComputeMetrics(const PipelineResult& run, const ValidatedParams& p, const Scene& scene) {
    if (scene.empty()) {
        throw Error::InvalidParam("scene", "metrics need at least one ground-truth target");
    }
    const SarImage& img = run.image;
    const std::size_t rows = img.db.rows();
    const std::size_t cols = img.db.cols();

    MetricsReport rep;
    rep.method_tag = img.method_tag;
    rep.rcmc_applied = run.rcmc_applied;
    rep.azimuth_compressed = run.azimuth_compressed;

    const auto noise_rows = NoiseRows(img, p, scene);
    std::vector<double> noise_px;
    noise_px.reserve(noise_rows.size() * cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r : noise_rows) noise_px.push_back(img.db(r, c));
    }
    rep.noise_floor_db = NoiseFloor(noise_px);

    const auto strongest = std::max_element(scene.begin(), scene.end(), [](const PointTarget& a, const PointTarget& b) {
        return a.amplitude < b.amplitude;
    });
    const PixelIndex pk = FindTargetPeak(img, p, *strongest);
    rep.target_range_bin = pk.range_bin;
    rep.target_azimuth_bin = pk.azimuth_bin;
    rep.target_range_m = img.range_axis[pk.range_bin];
    rep.target_peak_db = img.db(pk.range_bin, pk.azimuth_bin);
    rep.snr_db = rep.target_peak_db - rep.noise_floor_db;

    // The range cut starts beyond the leakage band so the leakage tone is never taken for a sidelobe.
    const std::size_t cut_lo = ImagingRowsBegin(img, p);
    std::vector<double> range_cut;
    for (std::size_t r = cut_lo; r < rows && img.range_axis[r] <= MaxUnambiguousRange(p); ++r) {
        range_cut.push_back(img.db(r, pk.azimuth_bin));
    }
    const auto range_mag = Magnitude(range_cut);
    if (pk.range_bin >= cut_lo && pk.range_bin - cut_lo < range_mag.size()) {
        rep.irw_range_m = TryMeasure([&] { return Irw(range_mag, pk.range_bin - cut_lo, RangeBinSpacing(p)); });
        rep.pslr_range_db = TryMeasure([&] { return Pslr(range_mag, pk.range_bin - cut_lo); });
    } else {
        rep.irw_range_m = kNaN;
        rep.pslr_range_db = kNaN;
    }

    if (run.azimuth_compressed) {
        std::vector<double> az_cut(cols);
        for (std::size_t c = 0; c < cols; ++c) az_cut[c] = img.db(pk.range_bin, c);
        const auto az_mag = Magnitude(az_cut);
        rep.irw_azimuth_m = TryMeasure([&] { return Irw(az_mag, pk.azimuth_bin, p->v_platform * p->t_sweep); });
        rep.pslr_azimuth_db = TryMeasure([&] { return Pslr(az_mag, pk.azimuth_bin); });
    } else {
        rep.irw_azimuth_m = kNaN;
        rep.pslr_azimuth_db = kNaN;
    }
    rep.pslr_db = std::isnan(rep.pslr_azimuth_db) ? rep.pslr_range_db : std::max(rep.pslr_range_db, rep.pslr_azimuth_db);

    rep.entropy = ImageEntropy(img, SceneRows(img, p));

    const double r_leak = RangeOfBeatFrequency(p, p->leak_search_max_hz);
    double leak_db = kImageFloorDb;
    for (std::size_t r = 0; r < rows; ++r) {
        if (img.range_axis[r] < 0 || img.range_axis[r] > r_leak) continue;
        for (std::size_t c = 0; c < cols; ++c) leak_db = std::max(leak_db, img.db(r, c));
    }
    rep.leakage_residual_db = leak_db - rep.target_peak_db;
    return rep;
}

PipelineComparison ComparePipelines(const PipelineResult& conventional, const PipelineResult& proposed,
                                    const ValidatedParams& p, const Scene& scene) {
    PipelineComparison cmp{ComputeMetrics(conventional, p, scene), ComputeMetrics(proposed, p, scene), {}};
    const auto& c = cmp.conventional;
    const auto& q = cmp.proposed;
    auto& d = cmp.delta;
    d.noise_floor_reduction_db = c.noise_floor_db - q.noise_floor_db;
    d.snr_gain_db = q.snr_db - c.snr_db;
    d.entropy_reduction = c.entropy - q.entropy;
    d.leakage_residual_reduction_db = c.leakage_residual_db - q.leakage_residual_db;
    d.irw_range_change_m = q.irw_range_m - c.irw_range_m;
    d.irw_azimuth_change_m = q.irw_azimuth_m - c.irw_azimuth_m;
    d.pslr_change_db = q.pslr_db - c.pslr_db;
    const double conv_abs = std::abs(conventional.focused(c.target_range_bin, c.target_azimuth_bin));
    const double prop_abs = std::abs(proposed.focused(q.target_range_bin, q.target_azimuth_bin));
    d.target_level_difference_db = 20.0 * std::log10(prop_abs / conv_abs);
    d.peak_position_match = c.target_range_m == q.target_range_m && c.target_azimuth_bin == q.target_azimuth_bin;
    return cmp;
}

PipelineComparison ComparePipelines(const DataCube& cube, const Scene& scene) {
    ValidateScene(cube.params, scene);
    const PipelineResult conv = RunConventional(cube);
    const PipelineResult prop = RunProposed(cube);
    return ComparePipelines(conv, prop, cube.params, scene);
}

}  // namespace fmcwsar
