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
#include "fmcwsar/aspc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fmcwsar/error.hpp"
#include "fmcwsar/fft.hpp"
#include "fmcwsar/parallel.hpp"

namespace fmcwsar {
namespace {

std::size_t NextPowerOfTwo(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

double PrincipalPhase(cdouble z) {
    const double a = std::arg(z);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

}  // namespace

Spectrum ZeroPadFft(std::span<const cdouble> sweep, std::size_t nfft_leak, double fs) {
    if (nfft_leak < sweep.size() || !fft::IsPowerOfTwo(nfft_leak)) {
        throw Error(ErrorCode::kBadLength, "nfft_leak " + std::to_string(nfft_leak) +
                                               " must be a power of two >= sweep length " +
                                               std::to_string(sweep.size()));
    }
    std::vector<cdouble> padded(nfft_leak);
    std::copy(sweep.begin(), sweep.end(), padded.begin());
    Spectrum s{std::vector<cdouble>(nfft_leak), fs / static_cast<double>(nfft_leak)};
    fft::Forward(padded, s.bins);
    return s;
}

std::size_t SearchBandBins(const ValidatedParams& p) {
    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    const double limit = p->leak_search_max_hz;
    auto k = static_cast<std::size_t>(std::floor(limit / bin_hz));
    while (static_cast<double>(k + 1) * bin_hz <= limit) ++k;
    while (k > 0 && static_cast<double>(k) * bin_hz > limit) --k;
    return std::min(k + 1, p->nfft_leak);
}

LeakageEstimate PickLeakage(std::span<const cdouble> band, const ValidatedParams& p) {
    if (band.empty()) {
        throw Error(ErrorCode::kNoPeak, "leakage search band is empty");
    }
    std::vector<double> mag(band.size());
    std::transform(band.begin(), band.end(), mag.begin(), [](cdouble z) { return std::abs(z); });
    // max_element returns the first maximum, so ties resolve to the lowest bin.
    const auto peak = std::max_element(mag.begin(), mag.end());
    if (!(*peak > 0)) {
        throw Error(ErrorCode::kNoPeak, "no energy in the leakage search band");
    }

    std::vector<double> sorted = mag;
    auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
    std::nth_element(sorted.begin(), mid, sorted.end());
    const double median = *mid;
    const double threshold = median * std::pow(10.0, p->leak_detect_db / 20.0);

    const double bin_hz = p->fs / static_cast<double>(p->nfft_leak);
    LeakageEstimate est;
    est.detected = *peak >= threshold;
    est.k_leak = est.detected ? static_cast<std::size_t>(peak - mag.begin()) : 0;
    est.f_leak = static_cast<double>(est.k_leak) * bin_hz;
    // Undetected leakage leaves the sweep unrotated; a noise-bin phase would scramble slow-time coherence.
    est.theta_leak = est.detected ? PrincipalPhase(band[est.k_leak]) : 0.0;
    est.peak_mag = mag[est.k_leak];
    return est;
}

LeakageEstimator::LeakageEstimator(const ValidatedParams& p)
    : params_(p), n_(p.samples_per_sweep()), band_(SearchBandBins(p)) {
    const std::size_t big_l = p->nfft_leak;
    conv_len_ = NextPowerOfTwo(n_ + band_ - 1);
    const std::size_t chirp_len = std::max(n_, band_);
    chirp_.resize(chirp_len);
    const std::uint64_t two_l = 2 * static_cast<std::uint64_t>(big_l);
    for (std::size_t i = 0; i < chirp_len; ++i) {
        // i^2 mod 2L keeps the chirp argument small and exact.
        const std::uint64_t sq = (static_cast<std::uint64_t>(i) * i) % two_l;
        chirp_[i] = std::polar(1.0, -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(big_l));
    }
    std::vector<cdouble> kernel(conv_len_);
    for (std::size_t i = 0; i < band_; ++i) kernel[i] = std::conj(chirp_[i]);
    for (std::size_t i = 1; i < n_; ++i) kernel[conv_len_ - i] = std::conj(chirp_[i]);
    kernel_fft_.resize(conv_len_);
    fft::Forward(kernel, kernel_fft_);
}

std::vector<cdouble> LeakageEstimator::BandSpectrum(std::span<const cdouble> sweep) const {
    if (sweep.size() != n_) {
        throw Error(ErrorCode::kLengthMismatch, "sweep has " + std::to_string(sweep.size()) +
                                                    " samples, estimator expects " + std::to_string(n_));
    }
    std::vector<cdouble> work(conv_len_);
    for (std::size_t i = 0; i < n_; ++i) work[i] = sweep[i] * chirp_[i];
    fft::Forward(work, work);
    for (std::size_t i = 0; i < conv_len_; ++i) work[i] *= kernel_fft_[i];
    fft::Inverse(work, work);
    const double scale = 1.0 / static_cast<double>(conv_len_);
    std::vector<cdouble> band(band_);
    for (std::size_t k = 0; k < band_; ++k) band[k] = work[k] * chirp_[k] * scale;
    return band;
}

LeakageEstimate LeakageEstimator::Estimate(std::span<const cdouble> sweep) const {
    return PickLeakage(BandSpectrum(sweep), params_);
}

LeakageEstimate EstimateLeakage(std::span<const cdouble> sweep, const ValidatedParams& p) {
    return LeakageEstimator(p).Estimate(sweep);
}

std::vector<cdouble> GenerateNco(const LeakageEstimate& est, std::size_t n, double fs) {
    std::vector<cdouble> nco(n);
    const double w = 2.0 * std::numbers::pi * est.f_leak / fs;
    for (std::size_t i = 0; i < n; ++i) {
        nco[i] = std::polar(1.0, w * static_cast<double>(i) + est.theta_leak);
    }
    return nco;
}

std::vector<double> MixExtractReal(std::span<const cdouble> sweep, std::span<const cdouble> nco) {
    if (sweep.size() != nco.size()) {
        throw Error(ErrorCode::kLengthMismatch, "sweep and NCO lengths differ (" + std::to_string(sweep.size()) +
                                                    " vs " + std::to_string(nco.size()) + ")");
    }
    std::vector<double> out(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        out[i] = sweep[i].real() * nco[i].real() + sweep[i].imag() * nco[i].imag();
    }
    return out;
}

AspcResult AspcCube(const DataCube& cube) {
    const auto& p = cube.params;
    const std::size_t n = cube.data.rows();
    const std::size_t m = cube.data.cols();
    if (n != p.samples_per_sweep() || m != p.m_sweeps()) {
        throw Error(ErrorCode::kDimensionMismatch, "cube dimensions do not match its parameters");
    }
    const LeakageEstimator estimator(p);
    AspcResult result{RealMatrix(n, m), std::vector<LeakageEstimate>(m)};
    ParallelFor(m, [&](std::size_t k) {
        try {
            const auto sweep = cube.data.col(k);
            const LeakageEstimate est = estimator.Estimate(sweep);
            const auto real = MixExtractReal(sweep, GenerateNco(est, n, p->fs));
            std::copy(real.begin(), real.end(), result.data.col(k).begin());
            result.estimates[k] = est;
        } catch (const Error& e) {
            throw e.WithSweep(k);
        }
    });
    return result;
}

}  // namespace fmcwsar
