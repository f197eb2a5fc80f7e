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
#include "fmcwsar/cube_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include "fmcwsar/error.hpp"

namespace fmcwsar::io {
namespace {

void PutU32(std::uint8_t* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void PutF64(std::uint8_t* p, double d) {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint32_t GetU32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double GetF64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

}  // namespace

CubeHeader HeaderOf(const DataCube& cube) {
    const auto& p = cube.params;
    if (cube.data.rows() > std::numeric_limits<std::uint32_t>::max() ||
        cube.data.cols() > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::kDimensionOverflow, "cube dimensions exceed the u32 header fields");
    }
    return {kCubeVersion, static_cast<std::uint32_t>(cube.data.rows()), static_cast<std::uint32_t>(cube.data.cols()),
            p->fs, p->t_sweep, p->f_center, p->bw, p->v_platform};
}

void WriteCube(std::ostream& os, const DataCube& cube) {
    const CubeHeader h = HeaderOf(cube);
    std::array<std::uint8_t, kCubeHeaderBytes> head{};
    std::copy(kCubeMagic.begin(), kCubeMagic.end(), head.begin());
    PutU32(&head[8], h.version);
    PutU32(&head[12], h.n);
    PutU32(&head[16], h.m);
    PutF64(&head[20], h.fs);
    PutF64(&head[28], h.t_sweep);
    PutF64(&head[36], h.f_center);
    PutF64(&head[44], h.bw);
    PutF64(&head[52], h.v);
    os.write(reinterpret_cast<const char*>(head.data()), head.size());

    // One sweep per write keeps the buffer small.
    std::vector<std::uint8_t> buf(16 * cube.data.rows());
    for (std::size_t m = 0; m < cube.data.cols(); ++m) {
        const auto col = cube.data.col(m);
        for (std::size_t i = 0; i < col.size(); ++i) {
            PutF64(&buf[16 * i], col[i].real());
            PutF64(&buf[16 * i + 8], col[i].imag());
        }
        os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    }
    if (!os) {
        throw Error(ErrorCode::kIoError, "failed writing cube stream");
    }
}

void WriteCube(const std::filesystem::path& path, const DataCube& cube) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
    }
    WriteCube(os, cube);
    os.close();
    if (!os) {
        throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
    }
}

RawCube ReadCube(std::istream& is) {
    std::array<std::uint8_t, kCubeHeaderBytes> head{};
    if (!is.read(reinterpret_cast<char*>(head.data()), head.size())) {
        throw Error(ErrorCode::kFormatError, "truncated cube header");
    }
    if (!std::equal(kCubeMagic.begin(), kCubeMagic.end(), head.begin())) {
        throw Error(ErrorCode::kFormatError, "bad magic, not an FMCWRAW1 cube");
    }
    RawCube raw;
    auto& h = raw.header;
    h.version = GetU32(&head[8]);
    if (h.version != kCubeVersion) {
        throw Error(ErrorCode::kFormatError, "unsupported cube version " + std::to_string(h.version));
    }
    h.n = GetU32(&head[12]);
    h.m = GetU32(&head[16]);
    h.fs = GetF64(&head[20]);
    h.t_sweep = GetF64(&head[28]);
    h.f_center = GetF64(&head[36]);
    h.bw = GetF64(&head[44]);
    h.v = GetF64(&head[52]);
    if (h.n == 0 || h.m == 0) {
        throw Error(ErrorCode::kFormatError, "empty cube dimensions");
    }

    raw.data = ComplexMatrix(h.n, h.m);
    std::vector<std::uint8_t> buf(16 * static_cast<std::size_t>(h.n));
    for (std::size_t m = 0; m < h.m; ++m) {
        if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
            throw Error(ErrorCode::kFormatError, "payload shorter than 16*n*m bytes (sweep " + std::to_string(m) + ")");
        }
        auto col = raw.data.col(m);
        for (std::size_t i = 0; i < col.size(); ++i) {
            col[i] = {GetF64(&buf[16 * i]), GetF64(&buf[16 * i + 8])};
        }
    }
    if (is.peek() != std::char_traits<char>::eof()) {
        throw Error(ErrorCode::kFormatError, "trailing bytes after the payload");
    }
    return raw;
}

RawCube ReadCube(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw Error(ErrorCode::kIoError, "cannot open cube '" + path.string() + "'");
    }
    return ReadCube(is);
}

DataCube ToDataCube(RawCube raw, RadarParams base) {
    const auto& h = raw.header;
    base.fs = h.fs;
    base.t_sweep = h.t_sweep;
    base.f_center = h.f_center;
    base.bw = h.bw;
    base.v_platform = h.v;
    base.m_sweeps = h.m;
    const ValidatedParams p = ValidateParams(base);
    if (p.samples_per_sweep() != h.n) {
        throw Error(ErrorCode::kFormatError, "header n = " + std::to_string(h.n) +
                                                 " disagrees with round(t_sweep * fs) = " +
                                                 std::to_string(p.samples_per_sweep()));
    }
    for (const auto& v : raw.data.flat()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(ErrorCode::kFormatError, "cube contains non-finite samples");
        }
    }
    return DataCube{std::move(raw.data), p};
}

}  // namespace fmcwsar::io
