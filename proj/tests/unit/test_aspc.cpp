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
#include "fmcwsar/aspc.hpp"
#include "fmcwsar/error.hpp"
#include "fmcwsar/parallel.hpp"
#include "fmcwsar/sar_processor.hpp"
#include "oracles.hpp"

using namespace fmcwsar;

namespace {

ValidatedParams Params(std::size_t m = 1) {
    RadarParams rp;
    rp.m_sweeps = m;
    return ValidateParams(rp);
}

ErrorCode CodeOf(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kInvalidParam;
}

}  // namespace

TEST_CASE("zero-padded FFT") {
    const double fs = 5e6;
    SUBCASE("unit impulse gives a flat spectrum") {
        std::vector<cdouble> x(4000);
        x[0] = 1.0;
        const auto s = ZeroPadFft(x, 1 << 19, fs);
        CHECK(s.bins.size() == (1u << 19));
        CHECK(s.bin_hz == fs / (1 << 19));
        for (std::size_t k = 0; k < s.bins.size(); k += 997) CHECK(std::abs(s.bins[k] - 1.0) < 1e-12);
    }
    SUBCASE("on-grid tone peaks at its bin and matches the Dirichlet kernel") {
        const double f0 = 1024 * fs / (1 << 19);
        const auto x = oracle::Tone(4000, f0, fs, 0.3);
        const auto s = ZeroPadFft(x, 1 << 19, fs);
        std::size_t best = 0;
        for (std::size_t k = 0; k < s.bins.size(); ++k) {
            if (std::abs(s.bins[k]) > std::abs(s.bins[best])) best = k;
        }
        CHECK(best == 1024);
        for (std::size_t k : {0u, 1000u, 1024u, 1030u, 1200u, 5000u}) {
            const cdouble ref = oracle::DirichletTone(k * s.bin_hz, f0, 0.3, 4000, fs);
            CHECK(std::abs(s.bins[k] - ref) < 1e-8);
        }
    }
    SUBCASE("bad lengths") {
        std::vector<cdouble> x(4000);
        CHECK(CodeOf([&] { ZeroPadFft(x, 3000, fs); }) == ErrorCode::kBadLength);
        CHECK(CodeOf([&] { ZeroPadFft(x, 6000, fs); }) == ErrorCode::kBadLength);
    }
}

TEST_CASE("search band covers exactly the bins up to the limit") {
    const auto p = Params();
    const std::size_t b = SearchBandBins(p);
    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    CHECK((b - 1) * bin_hz <= 50e3);
    CHECK(b * bin_hz > 50e3);
    CHECK(b == 5243);
}

TEST_CASE("band spectrum equals the full zero-padded FFT over the band") {
    const auto p = Params();
    std::mt19937_64 g(1);
    std::normal_distribution<double> d;
    std::vector<cdouble> x(4000);
    for (auto& v : x) v = {d(g), d(g)};
    const auto tone = oracle::Tone(4000, 12345.6, p->fs, 1.0, 30.0);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += tone[i];

    const LeakageEstimator est(p);
    const auto band = est.BandSpectrum(x);
    const auto full = ZeroPadFft(x, p->nfft_leak, p->fs);
    REQUIRE(band.size() == est.band_bins());
    double worst = 0.0;
    for (std::size_t k = 0; k < band.size(); ++k) worst = std::max(worst, std::abs(band[k] - full.bins[k]));
    CHECK(worst < 1e-8);
    // Spot checks against the direct DTFT sum.
    for (std::size_t k : {0u, 2528u, 5242u}) {
        CHECK(std::abs(band[k] - oracle::Dtft(x, k * full.bin_hz, p->fs)) < 1e-8);
    }
    const auto a = est.Estimate(x);
    const auto b = PickLeakage(std::span(full.bins).first(band.size()), p);
    CHECK(a.k_leak == b.k_leak);
    CHECK(std::abs(a.theta_leak - b.theta_leak) < 1e-10);
}

TEST_CASE("leakage estimate examples") {
    const auto p = Params();
    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    SUBCASE("on-grid tone: exact bin and phase") {
        const auto x = oracle::Tone(4000, 1024 * bin_hz, p->fs, 0.3);
        const auto e = EstimateLeakage(x, p);
        CHECK(e.detected);
        CHECK(e.k_leak == 1024);
        CHECK(e.f_leak == 9765.625);
        CHECK(std::abs(e.theta_leak - 0.3) <= 1e-9);
        CHECK(e.peak_mag == doctest::Approx(4000.0).epsilon(1e-12));
    }
    SUBCASE("off-grid 10 kHz tone") {
        const auto x = oracle::Tone(4000, 10e3, p->fs, 0.3);
        const auto e = EstimateLeakage(x, p);
        CHECK(std::abs(e.f_leak - 10e3) <= bin_hz);
        CHECK(std::abs(e.theta_leak - 0.3) <= 0.02);
        // Dense grid-search oracle: the padded-grid maximum of the closed-form transform.
        std::size_t best = 0;
        double best_mag = -1;
        for (std::size_t k = 0; k < 5243; ++k) {
            const double m = std::abs(oracle::DirichletTone(k * bin_hz, 10e3, 0.3, 4000, p->fs));
            if (m > best_mag) {
                best_mag = m;
                best = k;
            }
        }
        CHECK(e.k_leak == best);
    }
    SUBCASE("all-zero sweep has no peak") {
        std::vector<cdouble> x(4000);
        CHECK(CodeOf([&] { EstimateLeakage(x, p); }) == ErrorCode::kNoPeak);
    }
    SUBCASE("wrong sweep length") {
        std::vector<cdouble> x(100, 1.0);
        CHECK(CodeOf([&] { EstimateLeakage(x, p); }) == ErrorCode::kLengthMismatch);
    }
    SUBCASE("phase is in the principal branch") {
        for (double th : {-3.0, -1.0, 0.0, 2.0, 3.1, std::numbers::pi}) {
            const auto e = EstimateLeakage(oracle::Tone(4000, 1024 * bin_hz, p->fs, th), p);
            CHECK(e.theta_leak > -std::numbers::pi);
            CHECK(e.theta_leak <= std::numbers::pi);
            CHECK(std::abs(oracle::WrapPhase(e.theta_leak - th)) < 1e-9);
        }
    }
}

TEST_CASE("peak picking rules") {
    const auto p = Params();
    SUBCASE("ties resolve to the lowest bin") {
        std::vector<cdouble> band(100, 0.01);
        band[40] = 5.0;
        band[70] = cdouble(0.0, 5.0);
        const auto e = PickLeakage(band, p);
        CHECK(e.k_leak == 40);
        CHECK(e.f_leak == 40 * p->fs / static_cast<double>(p->nfft_leak));
    }
    SUBCASE("a flat band is not a detection and leaves the sweep unrotated") {
        std::vector<cdouble> band(100, cdouble(0.0, 1.0));
        const auto e = PickLeakage(band, p);
        CHECK_FALSE(e.detected);
        CHECK(e.k_leak == 0);
        CHECK(e.f_leak == 0.0);
        CHECK(e.theta_leak == 0.0);
    }
    SUBCASE("empty band") {
        CHECK(CodeOf([&] { PickLeakage({}, p); }) == ErrorCode::kNoPeak);
    }
}

TEST_CASE("property: estimator never leaves the search band") {
    const auto p = Params();
    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    const LeakageEstimator est(p);
    std::mt19937_64 g(8);
    std::uniform_real_distribution<double> far(60e3, 2.4e6), lf(0.0, 50e3), ph(-3.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        auto x = oracle::Tone(4000, far(g), p->fs, ph(g), 100.0);  // strong tone outside the band
        const auto leak = oracle::Tone(4000, lf(g), p->fs, ph(g), 1.0);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += leak[i];
        const auto e = est.Estimate(x);
        CHECK(e.k_leak < est.band_bins());
        CHECK(e.f_leak <= 50e3);
        CHECK(e.f_leak == static_cast<double>(e.k_leak) * bin_hz);
    }
}

TEST_CASE("NCO") {
    const double fs = 5e6;
    SUBCASE("zero frequency and phase") {
        for (auto v : GenerateNco({}, 64, fs)) CHECK(v == cdouble(1.0, 0.0));
    }
    SUBCASE("quarter sample rate rotation") {
        LeakageEstimate e;
        e.f_leak = fs / 4;
        const auto n = GenerateNco(e, 8, fs);
        const cdouble ref[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        for (std::size_t i = 0; i < n.size(); ++i) CHECK(std::abs(n[i] - ref[i % 4]) < 1e-12);
    }
    SUBCASE("phase reference at n = 0") {
        LeakageEstimate e;
        e.f_leak = 1234.0;
        e.theta_leak = 0.7;
        const auto n = GenerateNco(e, 4000, fs);
        const auto ref = oracle::Tone(4000, 1234.0, fs, 0.7);
        for (std::size_t i = 0; i < n.size(); ++i) CHECK(std::abs(n[i] - ref[i]) < 1e-12);
    }
}

TEST_CASE("mix and real extraction") {
    LeakageEstimate e;
    e.f_leak = 777.0;
    e.theta_leak = -1.1;
    const auto nco = GenerateNco(e, 512, 5e6);
    SUBCASE("x = NCO gives ones") {
        for (double v : MixExtractReal(nco, nco)) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("x = A NCO gives A") {
        std::vector<cdouble> x(nco);
        for (auto& v : x) v *= 2.5;
        for (double v : MixExtractReal(x, nco)) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
    }
    SUBCASE("Re(x conj(nco))") {
        std::mt19937_64 g(2);
        std::normal_distribution<double> d;
        std::vector<cdouble> x(512);
        for (auto& v : x) v = {d(g), d(g)};
        const auto out = MixExtractReal(x, nco);
        for (std::size_t i = 0; i < x.size(); ++i) CHECK(out[i] == doctest::Approx((x[i] * std::conj(nco[i])).real()));
    }
    SUBCASE("length mismatch") {
        std::vector<cdouble> x(10);
        CHECK(CodeOf([&] { MixExtractReal(x, nco); }) == ErrorCode::kLengthMismatch);
    }
}

TEST_CASE("A-SPC over a cube") {
    LeakageModel lk;
    lk.amplitude = 1000.0;
    lk.beat_freq = 1e3;
    lk.static_phase = 0.4;
    lk.phase_noise = {0.05, 100e3, 3};
    const Scene scene{{0.0, 800.0, 1.0}};
    SUBCASE("single sweep equals the per-sweep composition") {
        const auto p = Params(1);
        const auto cube = SimulateCube(p, scene, lk, 0.01, 1);
        const auto r = AspcCube(cube);
        const auto e = EstimateLeakage(cube.data.col(0), p);
        const auto ref = MixExtractReal(cube.data.col(0), GenerateNco(e, 4000, p->fs));
        CHECK(std::equal(ref.begin(), ref.end(), r.data.col(0).begin()));
        CHECK(r.estimates[0].k_leak == e.k_leak);
        CHECK(r.estimates[0].theta_leak == e.theta_leak);
    }
    SUBCASE("identical sweeps give identical columns") {
        const auto p = Params(4);
        RadarParams rp = p.raw();
        rp.v_platform = 0;
        LeakageModel clean = lk;
        clean.phase_noise.rms = 0;
        const auto cube = SimulateCube(ValidateParams(rp), scene, clean, 0.0, 1);
        const auto r = AspcCube(cube);
        for (std::size_t m = 1; m < 4; ++m) {
            CHECK(std::equal(r.data.col(0).begin(), r.data.col(0).end(), r.data.col(m).begin()));
            CHECK(r.estimates[m].k_leak == r.estimates[0].k_leak);
            CHECK(r.estimates[m].theta_leak == r.estimates[0].theta_leak);
        }
    }
    SUBCASE("output is independent of the thread count") {
        const auto p = Params(16);
        const auto cube = SimulateCube(p, scene, lk, 0.01, 1);
        SetMaxThreads(1);
        const auto a = AspcCube(cube);
        SetMaxThreads(4);
        const auto b = AspcCube(cube);
        SetMaxThreads(0);
        CHECK(a.data == b.data);
    }
    SUBCASE("per-sweep failures carry the sweep index") {
        auto cube = SimulateCube(Params(4), {}, lk, 0.0, 1);
        for (auto& v : cube.data.col(2)) v = 0.0;
        try {
            AspcCube(cube);
            FAIL("no error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::kNoPeak);
            REQUIRE(e.sweep().has_value());
            CHECK(*e.sweep() == 2);
        }
    }
}

TEST_CASE("property: clean leakage is removed to a constant") {
    // Mixed to DC with zero phase, a phase-noise-free leakage tone becomes the constant A cos(0) = A
    // up to the sub-bin frequency and phase error of the estimate.
    const auto p = Params(1);
    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    LeakageModel lk;
    lk.amplitude = 3.0;
    lk.beat_freq = 1200 * bin_hz;
    lk.static_phase = -2.0;
    const auto cube = SimulateCube(p, {}, lk, 0.0, 0);
    const auto r = AspcCube(cube);
    for (double v : r.data.col(0)) CHECK(v == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("property: quartic suppression at the stationary point (reduced run)") {
    // AC power after A-SPC scales as sigma^4 (second-order), Re(x) without mixing as sigma^2.
    const auto p = Params(4);
    const double sigmas[] = {0.01, 0.02, 0.04, 0.08};
    std::vector<double> lx, la, lu;
    for (double s : sigmas) {
        double pa = 0, pu = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            LeakageModel lk;
            lk.amplitude = 1.0;
            lk.beat_freq = 1e3;
            lk.static_phase = 0.3;
            lk.phase_noise = {s, 100e3, seed};
            LeakageModel clean = lk;
            clean.phase_noise.rms = 0.0;
            const auto cube = SimulateCube(p, {}, lk, 0.0, seed);
            const auto ref = SimulateCube(p, {}, clean, 0.0, seed);
            const auto r = AspcCube(cube);
            for (std::size_t m = 0; m < 4; ++m) {
                double mean = 0;
                for (double v : r.data.col(m)) mean += v;
                mean /= 4000.0;
                for (double v : r.data.col(m)) pa += (v - mean) * (v - mean);
                for (std::size_t n = 0; n < 4000; ++n) {
                    const double d = cube.data(n, m).real() - ref.data(n, m).real();
                    pu += d * d;
                }
            }
        }
        lx.push_back(std::log10(s * s));
        la.push_back(std::log10(pa));
        lu.push_back(std::log10(pu));
    }
    CHECK(oracle::Slope(lx, la) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(oracle::Slope(lx, lu) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("property: target preserved through real extraction") {
    // Real extraction halves a coherent tone, 20 log10(2) = 6.02 dB, and must not move its bin.
    RadarParams rp;
    rp.m_sweeps = 1;
    const auto p = ValidateParams(rp);
    for (double r0 : {300.0, 1000.0, 1700.0}) {
        const Scene scene{{0.0, r0, 1.0}};
        const auto cube = SimulateCube(p, scene, {}, 0.0, 0);
        const auto conv = RangeCompress(cube.data, p);
        const auto prop = RangeCompress(AspcCube(cube).data, p);
        auto peak = [](const RangeProfileMatrix& rd) {
            std::size_t best = 0;
            for (std::size_t i = 0; i < rd.data.rows(); ++i) {
                if (std::abs(rd.data(i, 0)) > std::abs(rd.data(best, 0))) best = i;
            }
            return std::pair{rd.range_axis[best], std::abs(rd.data(best, 0))};
        };
        const auto [rc, mc] = peak(conv);
        const auto [rpk, mp] = peak(prop);
        CHECK(rc == rpk);
        const double diff = 20.0 * std::log10(mc / mp);
        CHECK(std::abs(diff - 20.0 * std::log10(2.0)) <= 0.5);
    }
}
