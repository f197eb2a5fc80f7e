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
#include "fmcwsar/image_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fmcwsar/error.hpp"

namespace fmcwsar::io {

std::uint8_t GrayOfDb(double db) {
    if (!(db > kPgmBlackDb)) return 0;
    if (db >= 0.0) return 255;
    return static_cast<std::uint8_t>(std::lround(255.0 * (db - kPgmBlackDb) / -kPgmBlackDb));
}

void WritePgm(std::ostream& os, const SarImage& img) {
    const std::size_t rows = img.db.rows();
    const std::size_t cols = img.db.cols();
    os << "P5\n"
       << "# fmcwsar " << ToString(img.method_tag) << " image; gray = 255 * (dB + 80) / 80, clipped to [0, 255]\n"
       << cols << ' ' << rows << "\n255\n";
    std::vector<char> line(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) line[c] = static_cast<char>(GrayOfDb(img.db(r, c)));
        os.write(line.data(), static_cast<std::streamsize>(cols));
    }
}

std::string FormatDouble(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void WriteCsv(std::ostream& os, const SarImage& img) {
    std::string line;
    for (std::size_t r = 0; r < img.db.rows(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < img.db.cols(); ++c) {
            if (c) line += ',';
            line += FormatDouble(img.db(r, c));
        }
        line += '\n';
        os << line;
    }
}

std::string FormatReport(const MetricsReport& rep, std::uint64_t seed) {
    std::ostringstream os;
    os << "# fmcwsar metrics report\n"
       << "# conventional = identical range-Doppler chain without A-SPC, fed the complex raw data\n"
       << "# noise floor = median of dB pixels beyond the leakage band, target rows excluded (+-10 bins)\n"
       << "# entropy = intensity entropy (nats) over the rows between the leakage band and the maximum range\n"
       << "method = " << ToString(rep.method_tag) << '\n'
       << "seed = " << seed << '\n'
       << "noise_floor_estimator = median\n"
       << "noise_floor_db = " << FormatDouble(rep.noise_floor_db) << '\n'
       << "target_peak_db = " << FormatDouble(rep.target_peak_db) << '\n'
       << "snr_db = " << FormatDouble(rep.snr_db) << '\n'
       << "irw_range_m = " << FormatDouble(rep.irw_range_m) << '\n'
       << "irw_azimuth_m = " << FormatDouble(rep.irw_azimuth_m) << '\n'
       << "pslr_db = " << FormatDouble(rep.pslr_db) << '\n'
       << "pslr_range_db = " << FormatDouble(rep.pslr_range_db) << '\n'
       << "pslr_azimuth_db = " << FormatDouble(rep.pslr_azimuth_db) << '\n'
       << "entropy = " << FormatDouble(rep.entropy) << '\n'
       << "leakage_residual_db = " << FormatDouble(rep.leakage_residual_db) << '\n'
       << "target_range_m = " << FormatDouble(rep.target_range_m) << '\n'
       << "target_range_bin = " << rep.target_range_bin << '\n'
       << "target_azimuth_bin = " << rep.target_azimuth_bin << '\n'
       << "rcmc_applied = " << (rep.rcmc_applied ? 1 : 0) << '\n'
       << "azimuth_compressed = " << (rep.azimuth_compressed ? 1 : 0) << '\n';
    return os.str();
}

std::string FormatComparison(const PipelineComparison& cmp, std::uint64_t seed) {
    const auto& d = cmp.delta;
    std::ostringstream os;
    os << "# fmcwsar pipeline comparison (conventional vs proposed)\n"
       << "seed = " << seed << '\n'
       << "conventional.noise_floor_db = " << FormatDouble(cmp.conventional.noise_floor_db) << '\n'
       << "proposed.noise_floor_db = " << FormatDouble(cmp.proposed.noise_floor_db) << '\n'
       << "conventional.snr_db = " << FormatDouble(cmp.conventional.snr_db) << '\n'
       << "proposed.snr_db = " << FormatDouble(cmp.proposed.snr_db) << '\n'
       << "conventional.entropy = " << FormatDouble(cmp.conventional.entropy) << '\n'
       << "proposed.entropy = " << FormatDouble(cmp.proposed.entropy) << '\n'
       << "delta.noise_floor_reduction_db = " << FormatDouble(d.noise_floor_reduction_db) << '\n'
       << "delta.snr_gain_db = " << FormatDouble(d.snr_gain_db) << '\n'
       << "delta.entropy_reduction = " << FormatDouble(d.entropy_reduction) << '\n'
       << "delta.leakage_residual_reduction_db = " << FormatDouble(d.leakage_residual_reduction_db) << '\n'
       << "delta.irw_range_change_m = " << FormatDouble(d.irw_range_change_m) << '\n'
       << "delta.irw_azimuth_change_m = " << FormatDouble(d.irw_azimuth_change_m) << '\n'
       << "delta.pslr_change_db = " << FormatDouble(d.pslr_change_db) << '\n'
       << "delta.target_level_difference_db = " << FormatDouble(d.target_level_difference_db) << '\n'
       << "delta.peak_position_match = " << (d.peak_position_match ? 1 : 0) << '\n';
    return os.str();
}

std::string FormatEstimates(const std::vector<LeakageEstimate>& estimates) {
    std::ostringstream os;
    os << "# sweep k_leak f_leak_hz theta_leak_rad peak_mag detected\n";
    for (std::size_t m = 0; m < estimates.size(); ++m) {
        const auto& e = estimates[m];
        os << "leak." << m << " = " << e.k_leak << ' ' << FormatDouble(e.f_leak) << ' ' << FormatDouble(e.theta_leak)
           << ' ' << FormatDouble(e.peak_mag) << ' ' << (e.detected ? 1 : 0) << '\n';
    }
    return os.str();
}

std::map<std::string, std::string> ParseKeyValues(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::kFormatError, "report line without '=': " + line);
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& contents) {
    WriteBinaryFile(path, contents);
}

void WriteBinaryFile(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
    }
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    os.close();
    if (!os) {
        throw Error(ErrorCode::kIoError, "failed writing '" + path.string() + "'");
    }
}

}  // namespace fmcwsar::io
