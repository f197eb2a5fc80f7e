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
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fmcwsar/error.hpp"
#include "fmcwsar/metrics.hpp"
#include "oracles.hpp"

using namespace fmcwsar;

namespace {

ErrorCode CodeOf(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kInvalidParam;
}

// Single-sweep range profile of a tone at 1000 m on an oversampled grid, linear magnitude.
struct ToneCut {
    std::vector<double> mag;
    std::size_t peak;
    double spacing;
    ValidatedParams p;
};

ToneCut RangeCutOfTone(WindowKind w, std::size_t fft_len) {
    RadarParams rp;
    rp.m_sweeps = 1;
    rp.window = w;
    rp.range_fft_len = fft_len;
    const auto p = ValidateParams(rp);
    const auto cube = SimulateCube(p, {{0.0, 1000.0, 1.0}}, {}, 0.0, 0);
    const auto rd = RangeCompress(cube.data, p);
    ToneCut cut{std::vector<double>(rd.data.rows()), 0, RangeBinSpacing(p), p};
    for (std::size_t i = 0; i < rd.data.rows(); ++i) {
        cut.mag[i] = std::abs(rd.data(i, 0));
        if (cut.mag[i] > cut.mag[cut.peak]) cut.peak = i;
    }
    return cut;
}

SarImage ImageOf(std::vector<double> db, std::size_t rows, std::size_t cols) {
    SarImage img{RealMatrix(rows, cols), std::vector<double>(rows), std::vector<double>(cols), Method::kConventional};
    std::copy(db.begin(), db.end(), img.db.flat().begin());
    return img;
}

Scene LeakScene() { return {{0.0, 1000.0, 1.0}}; }

LeakageModel Leak(double rms, std::uint64_t seed) {
    LeakageModel lk;
    lk.amplitude = 1000.0;  // 60 dB above the unit target
    lk.beat_freq = 1e3;
    lk.static_phase = 0.3;
    lk.phase_noise = {rms, 100e3, seed};
    return lk;
}

ValidatedParams Params(std::size_t m) {
    RadarParams rp;
    rp.m_sweeps = m;
    return ValidateParams(rp);
}

}  // namespace

TEST_CASE("noise floor examples") {
    std::vector<double> flat(100, -80.0);
    CHECK(NoiseFloor(flat) == -80.0);

    std::vector<double> prof(100, -70.0);
    prof[40] = 0.0;
    const BinInterval ex[] = {{38, 42}};
    CHECK(NoiseFloor(prof, ex) == -70.0);

    std::vector<double> few(20, -50.0);
    const BinInterval most[] = {{0, 10}};
    CHECK(CodeOf([&] { NoiseFloor(few, most); }) == ErrorCode::kTooFewBins);

    const double even[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
    CHECK(NoiseFloor(even) == 8.5);
}

TEST_CASE("noise floor of white Gaussian noise against the periodogram level") {
    // Hann-windowed periodogram of complex white noise (sigma per component): E|X|^2 = 2 sigma^2 sum w^2.
    const std::size_t m = 64;
    const double sigma = 0.1;
    RadarParams rp;
    rp.m_sweeps = m;
    const auto p = ValidateParams(rp);
    const auto cube = SimulateCube(p, {}, {}, sigma, 11);
    const auto rd = RangeCompress(cube.data, p);
    const auto w = MakeWindow(WindowKind::kHann, 4000);
    double sw2 = 0;
    for (double v : w) sw2 += v * v;
    const double expected = 2.0 * sigma * sigma * sw2;

    std::vector<double> averaged(rd.data.rows()), single(rd.data.rows());
    for (std::size_t i = 0; i < rd.data.rows(); ++i) {
        double acc = 0;
        for (std::size_t c = 0; c < m; ++c) acc += std::norm(rd.data(i, c));
        averaged[i] = 10.0 * std::log10(acc / m);
        single[i] = 10.0 * std::log10(std::norm(rd.data(i, 0)));
    }
    CHECK(std::abs(NoiseFloor(averaged) - 10.0 * std::log10(expected)) <= 1.0);
    // A single look is exponential in power, so its median sits at ln 2 of the mean.
    CHECK(std::abs(NoiseFloor(single) - 10.0 * std::log10(expected * std::numbers::ln2)) <= 0.3);
}

TEST_CASE("impulse response width") {
    SUBCASE("rect window against the Dirichlet mainlobe") {
        const auto cut = RangeCutOfTone(WindowKind::kRect, 65536);
        const double irw = Irw(cut.mag, cut.peak, cut.spacing);
        CHECK(irw == doctest::Approx(0.886).epsilon(0.05));
        const double fs = 5e6;
        const double width_hz = oracle::HalfPowerWidth(
            [&](double df) { return std::abs(oracle::DirichletTone(df, 0.0, 0.0, 4000, fs)); }, fs / 4000);
        CHECK(irw == doctest::Approx(RangeOfBeatFrequency(cut.p, width_hz)).epsilon(0.01));
    }
    SUBCASE("hann window against the windowed transform") {
        const auto cut = RangeCutOfTone(WindowKind::kHann, 65536);
        const double irw = Irw(cut.mag, cut.peak, cut.spacing);
        CHECK(irw == doctest::Approx(1.44).epsilon(0.07));
        const auto w = MakeWindow(WindowKind::kHann, 4000);
        std::vector<oracle::cd> wc(w.begin(), w.end());
        const double width_hz =
            oracle::HalfPowerWidth([&](double df) { return std::abs(oracle::Dtft(wc, df, 5e6)); }, 5e6 / 2000);
        CHECK(irw == doctest::Approx(RangeOfBeatFrequency(cut.p, width_hz)).epsilon(0.01));
    }
    SUBCASE("degenerate cuts") {
        const double two[] = {1.0, 0.5};
        CHECK(CodeOf([&] { Irw(two, 0, 1.0); }) == ErrorCode::kNoCrossing);
        const double plateau[] = {0.9, 1.0, 0.95, 0.99};
        CHECK(CodeOf([&] { Irw(plateau, 1, 1.0); }) == ErrorCode::kNoCrossing);
    }
    SUBCASE("linear interpolation of the crossings") {
        // Triangle 0, 0.5, 1, 0.5, 0: crossings at 1/sqrt(2) are 2 -+ (1 - 1/sqrt2) / 0.5.
        const double tri[] = {0.0, 0.5, 1.0, 0.5, 0.0};
        CHECK(Irw(tri, 2, 2.0) == doctest::Approx(2.0 * 2.0 * (1.0 - 1.0 / std::sqrt(2.0)) / 0.5));
    }
}

TEST_CASE("peak sidelobe ratio") {
    SUBCASE("rect window") {
        const auto cut = RangeCutOfTone(WindowKind::kRect, 65536);
        CHECK(Pslr(cut.mag, cut.peak) == doctest::Approx(-13.26).epsilon(0.5 / 13.26));
    }
    SUBCASE("hann window") {
        const auto cut = RangeCutOfTone(WindowKind::kHann, 65536);
        CHECK(Pslr(cut.mag, cut.peak) <= -31.0);
    }
    SUBCASE("delta profile") {
        const double delta[] = {0, 0, 1, 0, 0};
        CHECK(CodeOf([&] { Pslr(delta, 2); }) == ErrorCode::kNoSidelobe);
    }
}

TEST_CASE("image entropy") {
    std::vector<double> one(12, kImageFloorDb);
    one[5] = 0.0;
    CHECK(ImageEntropy(ImageOf(one, 3, 4)) == 0.0);
    CHECK(ImageEntropy(ImageOf(std::vector<double>(12, -3.0), 3, 4)) == doctest::Approx(std::log(12.0)));
    // Two pixels with intensities 1 and 1/4: p = 0.8, 0.2.
    std::vector<double> two(12, kImageFloorDb);
    two[0] = 0.0;
    two[1] = 10.0 * std::log10(0.25);
    CHECK(ImageEntropy(ImageOf(two, 3, 4)) == doctest::Approx(-(0.8 * std::log(0.8) + 0.2 * std::log(0.2))));
    CHECK(CodeOf([&] { ImageEntropy(ImageOf(std::vector<double>(12, kImageFloorDb), 3, 4)); }) ==
          ErrorCode::kAllZero);
    // Row-restricted entropy ignores the rest of the image: rows 1..2 of a 3 x 4 image hold 8 equal pixels.
    std::vector<double> rows(12, -3.0);
    rows[0] = 0.0;  // (row 0, column 0), outside the interval
    CHECK(ImageEntropy(ImageOf(rows, 3, 4), {1, 2}) == doctest::Approx(std::log(8.0)));
    CHECK(CodeOf([&] { ImageEntropy(ImageOf(rows, 3, 4), {1, 3}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("report invariants on a focused scene") {
    // Azimuth IRW is measurable at the full default aperture.
    {
        const auto p = Params(1024);
        const auto rep = ComputeMetrics(RunConventional(SimulateCube(p, LeakScene(), {}, 0.01, 1)), p, LeakScene());
        CHECK(rep.irw_azimuth_m > 0.0);
        CHECK(rep.irw_range_m > 0.0);
    }
    const auto p = Params(128);
    const auto cube = SimulateCube(p, LeakScene(), Leak(0.05, 1), 0.01, 1);
    const auto cmp = ComparePipelines(cube, LeakScene());
    for (const auto* r : {&cmp.conventional, &cmp.proposed}) {
        CHECK(r->snr_db == r->target_peak_db - r->noise_floor_db);
        CHECK(r->entropy >= 0.0);
        CHECK(r->irw_range_m > 0.0);
        // A 1.7 m aperture resolves ~6 m in azimuth, wider than the 128-cell image: NaN unless noise dips.
        CHECK((std::isnan(r->irw_azimuth_m) || r->irw_azimuth_m > 0.0));
        CHECK(std::isfinite(r->leakage_residual_db));
        CHECK(r->azimuth_compressed);
        CHECK(std::abs(r->target_range_m - 1000.0) < 2.0);
    }
    CHECK(cmp.conventional.method_tag == Method::kConventional);
    CHECK(cmp.proposed.method_tag == Method::kProposed);
    CHECK(cmp.delta.noise_floor_reduction_db > 0.0);
    CHECK_THROWS_AS(ComputeMetrics(RunConventional(cube), p, {}), Error);
}

TEST_CASE("leakage-free comparison keeps the target") {
    const auto p = Params(128);
    const Scene scene{{0.0, 800.0, 1.0}};
    const auto cmp = ComparePipelines(SimulateCube(p, scene, {}, 0.01, 4), scene);
    CHECK(std::abs(cmp.delta.noise_floor_reduction_db) <= 3.5);
    CHECK(cmp.delta.peak_position_match);
    CHECK(std::abs(cmp.delta.target_level_difference_db + 20.0 * std::log10(2.0)) <= 0.5);
}

TEST_CASE("same seed gives bit-identical reports") {
    const auto p = Params(64);
    auto run = [&] {
        const auto cube = SimulateCube(p, LeakScene(), Leak(0.05, 2), 0.01, 2);
        return ComparePipelines(cube, LeakScene());
    };
    const auto a = run(), b = run();
    for (const auto* pr : {&a.conventional, &a.proposed}) {
        const auto* qr = pr == &a.conventional ? &b.conventional : &b.proposed;
        CHECK(pr->noise_floor_db == qr->noise_floor_db);
        CHECK(pr->entropy == qr->entropy);
        CHECK(pr->snr_db == qr->snr_db);
        CHECK(pr->irw_range_m == qr->irw_range_m);
    }
}

TEST_CASE("property: metrics invariant to global amplitude scaling") {
    const auto p = Params(64);
    const auto cube = SimulateCube(p, LeakScene(), Leak(0.05, 3), 0.01, 3);
    DataCube scaled = cube;
    for (auto& v : scaled.data.flat()) v *= 8.0;
    const auto a = ComparePipelines(cube, LeakScene());
    const auto b = ComparePipelines(scaled, LeakScene());
    CHECK(a.delta.noise_floor_reduction_db == doctest::Approx(b.delta.noise_floor_reduction_db).epsilon(1e-9));
    CHECK(a.proposed.noise_floor_db == doctest::Approx(b.proposed.noise_floor_db).epsilon(1e-9));
    CHECK(a.conventional.entropy == doctest::Approx(b.conventional.entropy).epsilon(1e-9));
    CHECK(a.proposed.entropy == doctest::Approx(b.proposed.entropy).epsilon(1e-9));
    CHECK(a.proposed.pslr_db == doctest::Approx(b.proposed.pslr_db).epsilon(1e-9));
}

TEST_CASE("property: noise-floor gain grows with the leakage phase noise") {
    // Thermal noise sits ~96 dB below the leakage peak, between the quartic A-SPC residual and the quadratic
    // unmitigated floor over these levels. Far above them the sigma^4 residual surfaces and the gain shrinks.
    const auto p = Params(64);
    const double levels[] = {0.0025, 0.005, 0.01, 0.02, 0.04};
    std::vector<double> x, y;
    for (double rms : levels) {
        const auto cube = SimulateCube(p, LeakScene(), Leak(rms, 5), 1.0, 5);
        x.push_back(rms);
        y.push_back(ComparePipelines(cube, LeakScene()).delta.noise_floor_reduction_db);
    }
    CHECK(oracle::Spearman(x, y) > 0.8);
}
