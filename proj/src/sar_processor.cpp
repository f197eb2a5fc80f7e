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
#include "fmcwsar/sar_processor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fmcwsar/error.hpp"
#include "fmcwsar/fft.hpp"
#include "fmcwsar/parallel.hpp"

namespace fmcwsar {
namespace {

constexpr double kPi = std::numbers::pi;

double SignedRangeOfBin(const ValidatedParams& p, std::ptrdiff_t k) {
    const double f = static_cast<double>(k) * p->fs / static_cast<double>(p->range_fft_len);
    return f * kSpeedOfLight / (2.0 * ChirpRate(p));
}

template <class Matrix>
void CheckRows(const Matrix& data, const ValidatedParams& p) {
    if (data.rows() != p.samples_per_sweep() || data.cols() == 0) {
        throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(p.samples_per_sweep()) +
                                                       " fast-time samples per sweep, got " +
                                                       std::to_string(data.rows()) + " x " +
                                                       std::to_string(data.cols()));
    }
}

RangeProfileMatrix MakeProfiles(const ValidatedParams& p, std::size_t rows, std::size_t cols,
                                std::ptrdiff_t first_bin) {
    RangeProfileMatrix out{ComplexMatrix(rows, cols), std::vector<double>(rows), first_bin, p.prf()};
    for (std::size_t i = 0; i < rows; ++i) {
        out.range_axis[i] = SignedRangeOfBin(p, first_bin + static_cast<std::ptrdiff_t>(i));
    }
    return out;
}

double Sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

void RowTransform(ComplexMatrix& data, bool inverse) {
    const std::size_t rows = data.rows();
    const std::size_t cols = data.cols();
    const double scale = 1.0 / static_cast<double>(cols);
    ParallelFor(rows, [&](std::size_t r) {
        std::vector<cdouble> buf(cols);
        for (std::size_t c = 0; c < cols; ++c) buf[c] = data(r, c);
        if (inverse) {
            fft::Inverse(buf, buf);
            for (auto& v : buf) v *= scale;
        } else {
            fft::Forward(buf, buf);
        }
        for (std::size_t c = 0; c < cols; ++c) data(r, c) = buf[c];
    });
}

}  // namespace

std::string_view ToString(Method m) { return m == Method::kConventional ? "conventional" : "proposed"; }

std::vector<double> MakeWindow(WindowKind kind, std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (kind == WindowKind::kHann && n > 1) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1)));
        }
    }
    return w;
}

double RangeBinSpacing(const ValidatedParams& p) { return SignedRangeOfBin(p, 1); }

RangeProfileMatrix RangeCompress(const ComplexMatrix& data, const ValidatedParams& p) {
    CheckRows(data, p);
    const std::size_t n = data.rows();
    const std::size_t len = p->range_fft_len;
    const auto half = static_cast<std::ptrdiff_t>(len / 2);
    const auto window = MakeWindow(p->window, n);
    // Rows cover beat indices -L/2 + 1 .. L/2 so that +fs/2 is the final bin.
    RangeProfileMatrix out = MakeProfiles(p, len, data.cols(), -half + 1);
    ParallelFor(data.cols(), [&](std::size_t m) {
        std::vector<cdouble> buf(len);
        const auto col = data.col(m);
        for (std::size_t i = 0; i < n; ++i) buf[i] = col[i] * window[i];
        fft::Forward(buf, buf);
        auto dst = out.data.col(m);
        for (std::size_t i = 0; i < len; ++i) {
            const std::ptrdiff_t k = -half + 1 + static_cast<std::ptrdiff_t>(i);
            dst[i] = buf[static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(len)) % static_cast<std::ptrdiff_t>(len))];
        }
    });
    return out;
}

RangeProfileMatrix RangeCompress(const RealMatrix& data, const ValidatedParams& p) {
    CheckRows(data, p);
    const std::size_t n = data.rows();
    const std::size_t len = p->range_fft_len;
    const auto window = MakeWindow(p->window, n);
    RangeProfileMatrix out = MakeProfiles(p, len / 2 + 1, data.cols(), 0);
    ParallelFor(data.cols(), [&](std::size_t m) {
        std::vector<double> buf(len);
        const auto col = data.col(m);
        for (std::size_t i = 0; i < n; ++i) buf[i] = col[i] * window[i];
        fft::ForwardReal(buf, out.data.col(m));
    });
    return out;
}

void AzimuthFft(ComplexMatrix& data) { RowTransform(data, false); }

void AzimuthIfft(ComplexMatrix& data) { RowTransform(data, true); }

double DopplerOfBin(std::size_t j, std::size_t m, double prf) {
    const auto sj = static_cast<double>(j);
    const auto sm = static_cast<double>(m);
    return (j < (m + 1) / 2 ? sj : sj - sm) * prf / sm;
}

double AzimuthFmRate(const ValidatedParams& p, double r0) {
    const double v = p->v_platform;
    if (v == 0.0) {
        throw Error(ErrorCode::kZeroVelocity, "azimuth FM rate is undefined for a stationary platform");
    }
    return 2.0 * v * v / (p.wavelength() * r0);
}

double RangeMigration(const ValidatedParams& p, double f_az, double r0) {
    const double v = p->v_platform;
    if (v == 0.0) {
        if (f_az == 0.0) return 0.0;
        throw Error(ErrorCode::kZeroVelocity, "range migration is undefined for a stationary platform");
    }
    const double lambda = p.wavelength();
    return lambda * lambda * f_az * f_az * r0 / (8.0 * v * v);
}

double MaxSignalMigration(const ValidatedParams& p, std::span<const double> r0_axis) {
    const double v = p->v_platform;
    if (v == 0.0) {
        throw Error(ErrorCode::kZeroVelocity, "range migration is undefined for a stationary platform");
    }
    const double t_aperture = static_cast<double>(p.m_sweeps()) * p->t_sweep;
    const double beam_doppler = 2.0 * v * std::sin(p->beamwidth / 2.0) / p.wavelength();
    const double r_min = RangeOfBeatFrequency(p, p->leak_search_max_hz);
    double worst = 0.0;
    for (double r0 : r0_axis) {
        if (!(r0 > r_min)) continue;
        const double f_max = std::min({p.prf() / 2.0, AzimuthFmRate(p, r0) * t_aperture / 2.0, beam_doppler});
        worst = std::max(worst, RangeMigration(p, f_max, r0));
    }
    return worst;
}

RcmcResult Rcmc(const RangeProfileMatrix& rd, const ValidatedParams& p, RcmcMode mode) {
    const std::size_t rows = rd.data.rows();
    const std::size_t cols = rd.data.cols();
    if (rd.range_axis.size() != rows) {
        throw Error(ErrorCode::kDimensionMismatch, "range axis length does not match the profile matrix");
    }
    RcmcResult result;
    if (cols > 1 && p->v_platform == 0.0) {
        throw Error(ErrorCode::kZeroVelocity, "RCMC requested for a stationary platform");
    }
    result.max_migration_m = cols > 1 ? MaxSignalMigration(p, rd.range_axis) : 0.0;
    const double cell = RangeBinSpacing(p);
    if (mode == RcmcMode::kAuto && result.max_migration_m < 0.5 * cell) {
        result.data = rd.data;
        return result;
    }
    result.applied = true;
    result.data = ComplexMatrix(rows, cols);

    const auto taps = static_cast<std::ptrdiff_t>(p->rcmc_kernel_taps);
    const double half_taps = static_cast<double>(taps) / 2.0;
    const double len = static_cast<double>(p->range_fft_len);
    // Centre the fast-time support so the profile is band-limited around zero before interpolating.
    const double centre = (static_cast<double>(p.samples_per_sweep()) - 1.0) / 2.0;
    auto demod = [&](double k) { return std::polar(1.0, 2.0 * kPi * k * centre / len); };

    ParallelFor(cols, [&](std::size_t j) {
        const double f_az = DopplerOfBin(j, cols, rd.prf);
        const auto src = rd.data.col(j);
        auto dst = result.data.col(j);
        std::vector<double> weights(static_cast<std::size_t>(taps));
        for (std::size_t i = 0; i < rows; ++i) {
            const double r0 = rd.range_axis[i];
            const double shift = r0 > 0 ? RangeMigration(p, f_az, r0) / cell : 0.0;
            if (shift == 0.0) {
                dst[i] = src[i];
                continue;
            }
            const double pos = static_cast<double>(i) + shift;
            const auto base = static_cast<std::ptrdiff_t>(std::floor(pos));
            double wsum = 0.0;
            for (std::ptrdiff_t t = 0; t < taps; ++t) {
                const double d = pos - static_cast<double>(base - taps / 2 + 1 + t);
                const double w = std::abs(d) < half_taps ? Sinc(d) * 0.5 * (1.0 + std::cos(kPi * d / half_taps)) : 0.0;
                weights[static_cast<std::size_t>(t)] = w;
                wsum += w;
            }
            cdouble acc{};
            for (std::ptrdiff_t t = 0; t < taps; ++t) {
                const std::ptrdiff_t q = base - taps / 2 + 1 + t;
                if (q < 0 || q >= static_cast<std::ptrdiff_t>(rows)) continue;
                const double k = static_cast<double>(rd.first_bin + q);
                acc += weights[static_cast<std::size_t>(t)] * src[static_cast<std::size_t>(q)] * demod(k);
            }
            dst[i] = acc / wsum * std::conj(demod(static_cast<double>(rd.first_bin) + pos));
        }
    });
    return result;
}

ComplexMatrix AzimuthCompress(const RangeProfileMatrix& rd, const ValidatedParams& p) {
    const std::size_t rows = rd.data.rows();
    const std::size_t cols = rd.data.cols();
    if (p->v_platform == 0.0) {
        throw Error(ErrorCode::kZeroVelocity, "azimuth matched filter is undefined for a stationary platform");
    }
    ComplexMatrix out = rd.data;
    // Stationary phase of exp(-j pi Ka t^2) under exp(-j 2 pi f t) gives exp(+j pi f^2 / Ka); the filter conjugates it.
    ParallelFor(cols, [&](std::size_t j) {
        const double f_az = DopplerOfBin(j, cols, rd.prf);
        auto col = out.col(j);
        for (std::size_t i = 0; i < rows; ++i) {
            const double r0 = rd.range_axis[i];
            if (!(r0 > 0)) continue;
            col[i] *= std::polar(1.0, -kPi * f_az * f_az / AzimuthFmRate(p, r0));
        }
    });
    AzimuthIfft(out);
    return out;
}

SarImage FormImage(const ComplexMatrix& focused, const ValidatedParams& p, std::vector<double> range_axis,
                   Method tag) {
    double peak = 0.0;
    for (const auto& v : focused.flat()) peak = std::max(peak, std::abs(v));
    if (!(peak > 0) || !std::isfinite(peak)) {
        throw Error(ErrorCode::kAllZero, "focused image has no finite nonzero pixel");
    }
    SarImage img{RealMatrix(focused.rows(), focused.cols()), std::move(range_axis),
                 std::vector<double>(focused.cols()), tag};
    auto src = focused.flat();
    auto dst = img.db.flat();
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double mag = std::abs(src[i]) / peak;
        dst[i] = mag > 0 ? std::max(20.0 * std::log10(mag), kImageFloorDb) : kImageFloorDb;
    }
    const double half = static_cast<double>(focused.cols()) / 2.0;
    for (std::size_t m = 0; m < focused.cols(); ++m) {
        img.azimuth_axis[m] = (static_cast<double>(m) - half) * p->v_platform * p->t_sweep;
    }
    return img;
}

namespace {

PipelineResult FinishRda(RangeProfileMatrix profiles, const ValidatedParams& p, Method tag) {
    PipelineResult result;
    result.first_bin = profiles.first_bin;
    if (profiles.data.cols() > 1) {
        AzimuthFft(profiles.data);
        RcmcResult rcmc = Rcmc(profiles, p);
        result.rcmc_applied = rcmc.applied;
        result.max_migration_m = rcmc.max_migration_m;
        profiles.data = std::move(rcmc.data);
        result.focused = AzimuthCompress(profiles, p);
        result.azimuth_compressed = true;
    } else {
        // Single look: nothing to focus in azimuth.
        result.focused = std::move(profiles.data);
    }
    result.image = FormImage(result.focused, p, std::move(profiles.range_axis), tag);
    return result;
}

}  // namespace

PipelineResult RunConventional(const DataCube& cube) {
    return FinishRda(RangeCompress(cube.data, cube.params), cube.params, Method::kConventional);
}

PipelineResult RunProposed(const DataCube& cube) {
    AspcResult aspc = AspcCube(cube);
    PipelineResult result = FinishRda(RangeCompress(aspc.data, cube.params), cube.params, Method::kProposed);
    result.estimates = std::move(aspc.estimates);
    return result;
}

PipelineResult RunPipeline(const DataCube& cube, Method method) {
    return method == Method::kConventional ? RunConventional(cube) : RunProposed(cube);
}

}  // namespace fmcwsar
