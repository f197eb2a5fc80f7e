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
#include "fmcwsar/radar_model.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fmcwsar/error.hpp"
#include "fmcwsar/fft.hpp"

namespace fmcwsar {

std::string_view ToString(WindowKind w) { return w == WindowKind::kRect ? "rect" : "hann"; }

WindowKind WindowFromString(std::string_view s) {
    if (s == "rect") return WindowKind::kRect;
    if (s == "hann") return WindowKind::kHann;
    throw Error::InvalidParam("window", "expected rect or hann, got '" + std::string(s) + "'");
}

ValidatedParams::ValidatedParams(const RadarParams& p)
    : p_(p),
      n_(static_cast<std::size_t>(std::llround(p.t_sweep * p.fs))),
      lambda_(kSpeedOfLight / p.f_center),
      prf_(1.0 / p.t_sweep) {}

ValidatedParams ValidateParams(const RadarParams& p) {
    std::vector<std::pair<std::string, std::string>> bad;
    auto check = [&](bool ok, const char* field, const char* reason) {
        if (!ok) bad.emplace_back(field, reason);
    };
    // Negated comparisons also reject NaN.
    check(p.f_center > 0, "f_center", "must be > 0");
    check(p.bw > 0, "bw", "must be > 0");
    check(p.t_sweep > 0, "t_sweep", "must be > 0");
    check(p.fs > 0, "fs", "must be > 0");
    check(p.v_platform >= 0 && std::isfinite(p.v_platform), "v_platform", "must be finite and >= 0");
    check(p.m_sweeps >= 1, "m_sweeps", "must be >= 1");
    check(p.beamwidth > 0 && p.beamwidth <= std::numbers::pi, "beamwidth", "must lie in (0, pi]");
    check(p.f_if_carrier == 0.0, "f_if_carrier", "only a 0 Hz final IF carrier is modelled");
    check(p.digital_bw >= 0 && (p.fs > 0 ? p.digital_bw <= p.fs / 2 : true), "digital_bw", "must lie in [0, fs/2]");
    check(p.leak_search_max_hz >= 0 && std::isfinite(p.leak_search_max_hz), "leak_search_max_hz", "must be >= 0");
    check(p.leak_detect_db >= 0 && std::isfinite(p.leak_detect_db), "leak_detect_db", "must be >= 0");
    check(p.rcmc_kernel_taps >= 2 && p.rcmc_kernel_taps % 2 == 0, "rcmc_kernel_taps", "must be even and >= 2");

    if (p.t_sweep > 0 && p.fs > 0 && std::isfinite(p.t_sweep * p.fs)) {
        const double n = std::round(p.t_sweep * p.fs);
        check(n >= 2, "t_sweep", "samples_per_sweep = round(t_sweep * fs) must be >= 2");
        if (n >= 2) {
            const auto ni = static_cast<std::size_t>(n);
            check(p.nfft_leak >= ni && fft::IsPowerOfTwo(p.nfft_leak), "nfft_leak",
                  "must be a power of two >= samples_per_sweep");
            check(p.range_fft_len >= ni && fft::IsPowerOfTwo(p.range_fft_len), "range_fft_len",
                  "must be a power of two >= samples_per_sweep");
        }
    }

    if (!bad.empty()) {
        std::string reason = bad.front().second;
        for (std::size_t i = 1; i < bad.size(); ++i) {
            reason += "; " + bad[i].first + ": " + bad[i].second;
        }
        throw Error::InvalidParam(bad.front().first, reason);
    }
    return ValidatedParams(p);
}

double ChirpRate(const ValidatedParams& p) { return p->bw / p->t_sweep; }

double BeatFrequencyOfRange(const ValidatedParams& p, double range_m) {
    if (!(range_m >= 0)) {
        throw Error(ErrorCode::kNegativeInput, "range must be >= 0");
    }
    return 2.0 * range_m * ChirpRate(p) / kSpeedOfLight;
}

double RangeOfBeatFrequency(const ValidatedParams& p, double beat_hz) {
    if (!(beat_hz >= 0)) {
        throw Error(ErrorCode::kNegativeInput, "beat frequency must be >= 0");
    }
    return beat_hz * kSpeedOfLight / (2.0 * ChirpRate(p));
}

double RangeResolution(const ValidatedParams& p) { return kSpeedOfLight / (2.0 * p->bw); }

double MaxUnambiguousRange(const ValidatedParams& p) { return RangeOfBeatFrequency(p, p->digital_bw); }

}  // namespace fmcwsar
