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
#include <numbers>
#include <string_view>

namespace fmcwsar {

inline constexpr double kSpeedOfLight = 299'792'458.0;

enum class WindowKind { kRect, kHann };

std::string_view ToString(WindowKind w);
WindowKind WindowFromString(std::string_view s);

/// Waveform, sampling, geometry and processing parameters. Defaults describe the Ku-band desk setup.
struct RadarParams {
    double f_center = 14.425e9;
    double bw = 150e6;
    double t_sweep = 800e-6;
    double fs = 5e6;
    std::size_t nfft_leak = std::size_t{1} << 19;
    double f_if_carrier = 0.0;
    double digital_bw = 2.5e6;
    WindowKind window = WindowKind::kHann;
    double v_platform = 60.0 / 3.6;
    double beamwidth = 34.0 * std::numbers::pi / 180.0;
    std::size_t m_sweeps = 1024;
    std::size_t range_fft_len = 4096;
    double leak_search_max_hz = 50e3;
    std::size_t rcmc_kernel_taps = 8;
    /// Search-band peak over band-median magnitude, in dB, above which a leakage tone counts as present.
    double leak_detect_db = 20.0;
    std::uint64_t memory_budget_bytes = std::uint64_t{1} << 30;
};

/// RadarParams that passed validation, with derived quantities cached. Only ValidateParams constructs one.
class ValidatedParams {
public:
    const RadarParams& raw() const noexcept { return p_; }
    std::size_t samples_per_sweep() const noexcept { return n_; }
    std::size_t m_sweeps() const noexcept { return p_.m_sweeps; }
    double wavelength() const noexcept { return lambda_; }
    double prf() const noexcept { return prf_; }
    const RadarParams* operator->() const noexcept { return &p_; }

private:
    friend ValidatedParams ValidateParams(const RadarParams& p);
    explicit ValidatedParams(const RadarParams& p);

    RadarParams p_;
    std::size_t n_;
    double lambda_;
    double prf_;
};

/// Throws Error(kInvalidParam) naming the first violated field; the message lists every violation.
ValidatedParams ValidateParams(const RadarParams& p);

double ChirpRate(const ValidatedParams& p);
double BeatFrequencyOfRange(const ValidatedParams& p, double range_m);
double RangeOfBeatFrequency(const ValidatedParams& p, double beat_hz);
double RangeResolution(const ValidatedParams& p);
double MaxUnambiguousRange(const ValidatedParams& p);

}  // namespace fmcwsar
