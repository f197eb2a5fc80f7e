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
#include "fmcwsar/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "fmcwsar/error.hpp"

namespace fmcwsar::fft {
namespace {

enum class Kind { kForward, kInverse, kReal };

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan Get(std::size_t n, Kind kind) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, kind);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        const int len = static_cast<int>(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = nullptr;
        if (kind == Kind::kReal) {
            std::vector<double> in(n);
            std::vector<cdouble> out(n / 2 + 1);
            plan = fftw_plan_dft_r2c_1d(len, in.data(), reinterpret_cast<fftw_complex*>(out.data()), flags);
        } else {
            std::vector<cdouble> in(n), out(n);
            plan = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    kind == Kind::kForward ? FFTW_FORWARD : FFTW_BACKWARD, flags);
        }
        if (plan == nullptr) {
            throw Error(ErrorCode::kBadLength, "FFTW could not plan length " + std::to_string(n));
        }
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, Kind>, fftw_plan> plans_;
};

PlanCache& Cache() {
    static PlanCache cache;
    return cache;
}

fftw_complex* AsFftw(cdouble* p) { return reinterpret_cast<fftw_complex*>(p); }

void Complex(std::span<const cdouble> in, std::span<cdouble> out, Kind kind) {
    if (in.size() != out.size() || in.empty()) {
        throw Error(ErrorCode::kLengthMismatch, "fft input/output length mismatch");
    }
    fftw_plan plan = Cache().Get(in.size(), kind);
    // Plans are out-of-place, and new-array execution must match; aliased calls go through a copy.
    if (in.data() == out.data()) {
        std::vector<cdouble> tmp(in.begin(), in.end());
        fftw_execute_dft(plan, AsFftw(tmp.data()), AsFftw(out.data()));
        return;
    }
    // FFTW does not modify the input of an out-of-place complex transform.
    fftw_execute_dft(plan, AsFftw(const_cast<cdouble*>(in.data())), AsFftw(out.data()));
}

}  // namespace

void Forward(std::span<const cdouble> in, std::span<cdouble> out) { Complex(in, out, Kind::kForward); }

void Inverse(std::span<const cdouble> in, std::span<cdouble> out) { Complex(in, out, Kind::kInverse); }

void ForwardReal(std::span<const double> in, std::span<cdouble> out) {
    if (in.empty() || out.size() != in.size() / 2 + 1) {
        throw Error(ErrorCode::kLengthMismatch, "real fft output must hold n/2 + 1 bins");
    }
    fftw_plan plan = Cache().Get(in.size(), Kind::kReal);
    // r2c plans are out-of-place here; the input is left intact.
    fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()), AsFftw(out.data()));
}

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace fmcwsar::fft
