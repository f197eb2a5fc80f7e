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
#include "fmcwsar/echo_simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fmcwsar/error.hpp"
#include "fmcwsar/parallel.hpp"

namespace fmcwsar {
namespace {

constexpr std::uint64_t kThermalStream = 0x7468726d;  // "thrm"
constexpr std::uint64_t kPhaseNoiseStream = 0x706e6f69;  // "pnoi"

// Samples between exact re-anchoring of the phasor recurrence.
constexpr std::size_t kAnchor = 64;

std::uint64_t SplitMix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Adds amp * exp(j (2 pi f n / fs + phase)) to out.
void AddTone(std::span<cdouble> out, double amp, double f, double fs, double phase) {
    const double w = 2.0 * std::numbers::pi * f / fs;
    const cdouble step = std::polar(1.0, w);
    for (std::size_t n0 = 0; n0 < out.size(); n0 += kAnchor) {
        cdouble z = std::polar(amp, w * static_cast<double>(n0) + phase);
        const std::size_t end = std::min(out.size(), n0 + kAnchor);
        for (std::size_t n = n0; n < end; ++n) {
            out[n] += z;
            z *= step;
        }
    }
}

}  // namespace

void ValidateTarget(const PointTarget& t) {
    if (!(t.y_cross > 0) || !std::isfinite(t.y_cross)) {
        throw Error::InvalidParam("scene.y_cross", "must be finite and > 0");
    }
    if (!std::isfinite(t.x_along)) {
        throw Error::InvalidParam("scene.x_along", "must be finite");
    }
    if (!(t.amplitude >= 0) || !std::isfinite(t.amplitude)) {
        throw Error::InvalidParam("scene.amplitude", "must be finite and >= 0");
    }
}

void ValidateLeakage(const ValidatedParams& p, const LeakageModel& leak) {
    if (!(leak.amplitude >= 0) || !std::isfinite(leak.amplitude)) {
        throw Error::InvalidParam("leakage.amplitude", "must be finite and >= 0");
    }
    if (!(leak.beat_freq >= 0) || !(leak.beat_freq < p->leak_search_max_hz)) {
        throw Error::InvalidParam("leakage.beat_freq", "must lie in [0, leak_search_max_hz)");
    }
    if (!std::isfinite(leak.static_phase)) {
        throw Error::InvalidParam("leakage.static_phase", "must be finite");
    }
    if (!(leak.phase_noise.rms >= 0) || !std::isfinite(leak.phase_noise.rms)) {
        throw Error::InvalidParam("leakage.phase_noise.rms", "must be finite and >= 0");
    }
    if (!(leak.phase_noise.corner_hz > 0) || !std::isfinite(leak.phase_noise.corner_hz)) {
        throw Error::InvalidParam("leakage.phase_noise.corner_hz", "must be finite and > 0");
    }
}

void ValidateScene(const ValidatedParams& p, const Scene& scene) {
    for (const auto& t : scene) {
        ValidateTarget(t);
        // Closest approach gives the lowest beat frequency the target ever produces.
        if (!(BeatFrequencyOfRange(p, t.y_cross) > p->leak_search_max_hz)) {
            throw Error::InvalidParam("scene.y_cross", "target at " + std::to_string(t.y_cross) +
                                                           " m beats inside the leakage search band");
        }
    }
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t purpose) {
    return SplitMix64(SplitMix64(SplitMix64(seed) ^ stream_id) ^ purpose);
}

std::vector<double> PhaseNoiseSequence(const PhaseNoiseParams& pn, std::size_t count, std::uint64_t stream_id,
                                       double fs) {
    std::vector<double> phi(count, 0.0);
    if (pn.rms == 0.0 || count == 0) {
        return phi;
    }
    std::mt19937_64 rng(StreamSeed(pn.seed, stream_id, kPhaseNoiseStream));
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double a = std::exp(-2.0 * std::numbers::pi * pn.corner_hz / fs);
    // Start in the stationary state of y[n] = a y[n-1] + (1 - a) w[n].
    double y = gauss(rng) * std::sqrt((1.0 - a) / (1.0 + a));
    phi[0] = y;
    for (std::size_t n = 1; n < count; ++n) {
        y = a * y + (1.0 - a) * gauss(rng);
        phi[n] = y;
    }

    double sum_sq = 0.0;
    for (double v : phi) sum_sq += v * v;
    const double rms = std::sqrt(sum_sq / static_cast<double>(count));
    if (rms > 0) {
        const double scale = pn.rms / rms;
        for (double& v : phi) v *= scale;
    }
    return phi;
}

PhaseSample TargetPhaseHistory(const ValidatedParams& p, const PointTarget& tgt, std::size_t m) {
    const double u = p->v_platform * p->t_sweep * (static_cast<double>(m) - static_cast<double>(p.m_sweeps()) / 2.0);
    const double dx = tgt.x_along - u;
    const double r = std::hypot(tgt.y_cross, dx);
    const bool in_beam = std::abs(std::atan2(dx, tgt.y_cross)) <= p->beamwidth / 2.0;
    return {BeatFrequencyOfRange(p, r), -4.0 * std::numbers::pi * r / p.wavelength(), in_beam};
}

std::vector<cdouble> SimulateSweep(const ValidatedParams& p, const Scene& scene, const LeakageModel& leak,
                                   std::size_t m, double noise_sigma, std::uint64_t seed) {
    const std::size_t n_samples = p.samples_per_sweep();
    const double fs = p->fs;
    std::vector<cdouble> x(n_samples);

    for (const auto& tgt : scene) {
        if (tgt.amplitude == 0.0) continue;
        const PhaseSample ph = TargetPhaseHistory(p, tgt, m);
        if (!ph.in_beam) continue;
        AddTone(x, tgt.amplitude, ph.beat_hz, fs, ph.psi);
    }

    if (leak.amplitude > 0) {
        const auto phi = PhaseNoiseSequence(leak.phase_noise, n_samples, m, fs);
        const double w = 2.0 * std::numbers::pi * leak.beat_freq / fs;
        for (std::size_t n = 0; n < n_samples; ++n) {
            x[n] += std::polar(leak.amplitude, w * static_cast<double>(n) + leak.static_phase + phi[n]);
        }
    }

    if (noise_sigma > 0) {
        std::mt19937_64 rng(StreamSeed(seed, m, kThermalStream));
        std::normal_distribution<double> gauss(0.0, noise_sigma);
        for (auto& v : x) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += cdouble(re, im);
        }
    }
    return x;
}

DataCube SimulateCube(const ValidatedParams& p, const Scene& scene, const LeakageModel& leak, double noise_sigma,
                      std::uint64_t seed) {
    for (const auto& t : scene) ValidateTarget(t);
    ValidateLeakage(p, leak);
    if (!(noise_sigma >= 0) || !std::isfinite(noise_sigma)) {
        throw Error::InvalidParam("noise_sigma", "must be finite and >= 0");
    }
    const std::size_t n = p.samples_per_sweep();
    const std::size_t m = p.m_sweeps();
    const long double bytes = static_cast<long double>(n) * m * sizeof(cdouble);
    if (bytes > static_cast<long double>(p->memory_budget_bytes)) {
        throw Error(ErrorCode::kDimensionOverflow, "cube of " + std::to_string(n) + " x " + std::to_string(m) +
                                                       " samples exceeds the memory budget of " +
                                                       std::to_string(p->memory_budget_bytes) + " bytes");
    }

    DataCube cube{ComplexMatrix(n, m), p};
    ParallelFor(m, [&](std::size_t k) {
        const auto sweep = SimulateSweep(p, scene, leak, k, noise_sigma, seed);
        std::copy(sweep.begin(), sweep.end(), cube.data.col(k).begin());
    });
    return cube;
}

}  // namespace fmcwsar
