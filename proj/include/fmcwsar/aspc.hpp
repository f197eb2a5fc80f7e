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
#include <vector>

#include "fmcwsar/echo_simulator.hpp"
#include "fmcwsar/matrix.hpp"
#include "fmcwsar/radar_model.hpp"

namespace fmcwsar {

/// Per-sweep leakage tone estimate on the nfft_leak grid. `detected` is false when no bin in the search band
/// stands leak_detect_db above the band median; the estimate then degenerates to k = 0, theta = 0, so the NCO
/// is identically one and A-SPC reduces to plain real-part extraction.
struct LeakageEstimate {
    std::size_t k_leak = 0;
    double f_leak = 0.0;
    double theta_leak = 0.0;
    double peak_mag = 0.0;
    bool detected = false;
};

struct Spectrum {
    std::vector<cdouble> bins;
    double bin_hz = 0.0;
};

/// Unwindowed DFT of `sweep` extended with trailing zeros to nfft_leak points. Throws kBadLength when
/// nfft_leak < sweep.size() or is not a power of two.
Spectrum ZeroPadFft(std::span<const cdouble> sweep, std::size_t nfft_leak, double fs);

/// Number of grid bins k with k * fs / nfft_leak <= leak_search_max_hz.
std::size_t SearchBandBins(const ValidatedParams& p);

/// Argmax/phase rule shared by every estimation route. `band` holds bins 0..K-1 of the padded DFT.
LeakageEstimate PickLeakage(std::span<const cdouble> band, const ValidatedParams& p);

/// Evaluates only the search-band bins of the nfft_leak-point padded DFT with a chirp-z (Bluestein) convolution.
/// Equal to the leading bins of ZeroPadFft to rounding, at a fraction of the cost of the full 2^19 transform.
/// Immutable after construction; Estimate() may be called concurrently.
class LeakageEstimator {
public:
    explicit LeakageEstimator(const ValidatedParams& p);

    std::vector<cdouble> BandSpectrum(std::span<const cdouble> sweep) const;
    LeakageEstimate Estimate(std::span<const cdouble> sweep) const;
    std::size_t band_bins() const noexcept { return band_; }

private:
    ValidatedParams params_;
    std::size_t n_;
    std::size_t band_;
    std::size_t conv_len_;
    std::vector<cdouble> chirp_;       // exp(-j pi i^2 / L), i < max(n, band)
    std::vector<cdouble> kernel_fft_;  // DFT of the wrapped conjugate chirp
};

LeakageEstimate EstimateLeakage(std::span<const cdouble> sweep, const ValidatedParams& p);

/// NCO[n] = exp(j (2 pi f_leak n / fs + theta_leak)).
std::vector<cdouble> GenerateNco(const LeakageEstimate& est, std::size_t n, double fs);

/// out[n] = Re(x[n] conj(nco[n])).
std::vector<double> MixExtractReal(std::span<const cdouble> sweep, std::span<const cdouble> nco);

struct AspcResult {
    RealMatrix data;
    std::vector<LeakageEstimate> estimates;
};

/// Applies estimate -> NCO -> conjugate mix -> real extraction to every sweep independently.
/// Failures are rethrown tagged with the sweep index.
AspcResult AspcCube(const DataCube& cube);

}  // namespace fmcwsar
