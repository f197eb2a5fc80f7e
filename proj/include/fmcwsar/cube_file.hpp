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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "fmcwsar/echo_simulator.hpp"
#include "fmcwsar/matrix.hpp"

/// Raw deramped cube file: a 64-byte little-endian header followed by n*m interleaved f64 (re, im) samples,
/// fast time contiguous per sweep, sweeps in increasing m.
///
///   off  size  field
///     0     8  magic "FMCWRAW1"
///     8     4  version (u32, = 1)
///    12     4  n       (u32)
///    16     4  m       (u32)
///    20     8  fs      (f64, Hz)
///    28     8  t_sweep (f64, s)
///    36     8  f_center(f64, Hz)
///    44     8  bw      (f64, Hz)
///    52     8  v       (f64, m/s)
///    60     4  reserved, zero
namespace fmcwsar::io {

inline constexpr std::array<char, 8> kCubeMagic{'F', 'M', 'C', 'W', 'R', 'A', 'W', '1'};
inline constexpr std::uint32_t kCubeVersion = 1;
inline constexpr std::size_t kCubeHeaderBytes = 64;

struct CubeHeader {
    std::uint32_t version = kCubeVersion;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    double fs = 0.0;
    double t_sweep = 0.0;
    double f_center = 0.0;
    double bw = 0.0;
    double v = 0.0;
};

struct RawCube {
    CubeHeader header;
    ComplexMatrix data;
};

CubeHeader HeaderOf(const DataCube& cube);

void WriteCube(std::ostream& os, const DataCube& cube);
void WriteCube(const std::filesystem::path& path, const DataCube& cube);

/// Throws kFormatError on bad magic, version or payload size and kIoError when the file cannot be read.
RawCube ReadCube(std::istream& is);
RawCube ReadCube(const std::filesystem::path& path);

/// Overrides the waveform fields of `base` with the header values and validates the result.
DataCube ToDataCube(RawCube raw, RadarParams base);

}  // namespace fmcwsar::io
