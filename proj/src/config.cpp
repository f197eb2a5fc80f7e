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
#include "fmcwsar/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fmcwsar/error.hpp"

namespace fmcwsar {
namespace {

using Setter = std::function<void(const YAML::Node&)>;

template <class T>
T As(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw Error::InvalidParam(key, "cannot parse value '" + (node.IsScalar() ? node.Scalar() : std::string("<non-scalar>")) + "'");
    }
}

void ApplyMap(const YAML::Node& node, const std::string& prefix, const std::map<std::string, Setter>& setters) {
    if (!node.IsMap()) {
        throw Error::InvalidParam(prefix.empty() ? "<root>" : prefix, "expected a mapping");
    }
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        auto it = setters.find(key);
        if (it == setters.end()) {
            throw Error::InvalidParam(path, "unknown key");
        }
        it->second(kv.second);
    }
}

template <class T>
Setter Field(T& target, std::string path) {
    return [&target, path](const YAML::Node& n) { target = As<T>(n, path); };
}

MethodSelection MethodFromString(const std::string& s) {
    if (s == "conventional") return MethodSelection::kConventional;
    if (s == "proposed") return MethodSelection::kProposed;
    if (s == "both") return MethodSelection::kBoth;
    throw Error::InvalidParam("method", "expected conventional, proposed or both, got '" + s + "'");
}

}  // namespace

RunConfig ParseConfig(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::kFormatError, std::string("config is not valid YAML: ") + e.what());
    }
    RunConfig cfg;
    if (root.IsNull()) {
        ValidateParams(cfg.radar);
        return cfg;
    }
    auto& r = cfg.radar;
    auto& l = cfg.leakage;

    const std::map<std::string, Setter> radar_keys = {
        {"f_center", Field(r.f_center, "radar.f_center")},
        {"bw", Field(r.bw, "radar.bw")},
        {"t_sweep", Field(r.t_sweep, "radar.t_sweep")},
        {"fs", Field(r.fs, "radar.fs")},
        {"nfft_leak", Field(r.nfft_leak, "radar.nfft_leak")},
        {"f_if_carrier", Field(r.f_if_carrier, "radar.f_if_carrier")},
        {"digital_bw", Field(r.digital_bw, "radar.digital_bw")},
        {"window", [&r](const YAML::Node& n) { r.window = WindowFromString(As<std::string>(n, "radar.window")); }},
        {"v_platform", Field(r.v_platform, "radar.v_platform")},
        {"beamwidth", Field(r.beamwidth, "radar.beamwidth")},
        {"m_sweeps", Field(r.m_sweeps, "radar.m_sweeps")},
        {"range_fft_len", Field(r.range_fft_len, "radar.range_fft_len")},
        {"leak_search_max_hz", Field(r.leak_search_max_hz, "radar.leak_search_max_hz")},
        {"rcmc_kernel_taps", Field(r.rcmc_kernel_taps, "radar.rcmc_kernel_taps")},
        {"leak_detect_db", Field(r.leak_detect_db, "radar.leak_detect_db")},
        {"memory_budget_bytes", Field(r.memory_budget_bytes, "radar.memory_budget_bytes")},
    };
    const std::map<std::string, Setter> phase_noise_keys = {
        {"rms", Field(l.phase_noise.rms, "leakage.phase_noise.rms")},
        {"corner_hz", Field(l.phase_noise.corner_hz, "leakage.phase_noise.corner_hz")},
        {"seed", [&](const YAML::Node& n) {
             l.phase_noise.seed = As<std::uint64_t>(n, "leakage.phase_noise.seed");
             cfg.phase_noise_seed_explicit = true;
         }},
    };
    const std::map<std::string, Setter> leakage_keys = {
        {"amplitude", Field(l.amplitude, "leakage.amplitude")},
        {"beat_freq", Field(l.beat_freq, "leakage.beat_freq")},
        {"static_phase", Field(l.static_phase, "leakage.static_phase")},
        {"phase_noise", [&](const YAML::Node& n) { ApplyMap(n, "leakage.phase_noise", phase_noise_keys); }},
    };
    auto scene_setter = [&](const YAML::Node& n) {
        if (!n.IsSequence()) {
            throw Error::InvalidParam("scene", "expected a list of targets");
        }
        for (std::size_t i = 0; i < n.size(); ++i) {
            PointTarget t;
            const std::string path = "scene[" + std::to_string(i) + "]";
            ApplyMap(n[i], path, {{"x_along", Field(t.x_along, path + ".x_along")},
                                  {"y_cross", Field(t.y_cross, path + ".y_cross")},
                                  {"amplitude", Field(t.amplitude, path + ".amplitude")}});
            cfg.scene.push_back(t);
        }
    };
    const std::map<std::string, Setter> root_keys = {
        {"radar", [&](const YAML::Node& n) { ApplyMap(n, "radar", radar_keys); }},
        {"scene", scene_setter},
        {"leakage", [&](const YAML::Node& n) { ApplyMap(n, "leakage", leakage_keys); }},
        {"noise_sigma", Field(cfg.noise_sigma, "noise_sigma")},
        {"seed", [&](const YAML::Node& n) {
             cfg.seed = As<std::uint64_t>(n, "seed");
         }},
        {"method", [&](const YAML::Node& n) { cfg.method = MethodFromString(As<std::string>(n, "method")); }},
        {"output_dir", [&](const YAML::Node& n) { cfg.output_dir = As<std::string>(n, "output_dir"); }},
    };
    ApplyMap(root, "", root_keys);

    const ValidatedParams p = ValidateParams(cfg.radar);
    for (const auto& t : cfg.scene) ValidateTarget(t);
    ValidateLeakage(p, cfg.leakage);
    if (!(cfg.noise_sigma >= 0)) {
        throw Error::InvalidParam("noise_sigma", "must be >= 0");
    }
    if (!cfg.phase_noise_seed_explicit) {
        cfg.leakage.phase_noise.seed = cfg.seed;
    }
    return cfg;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw Error(ErrorCode::kIoError, "cannot open config '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << is.rdbuf();
    return ParseConfig(ss.str());
}

void ApplySeed(RunConfig& cfg, std::uint64_t seed) {
    cfg.seed = seed;
    if (!cfg.phase_noise_seed_explicit) {
        cfg.leakage.phase_noise.seed = seed;
    }
}

void PrepareOutputDir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorCode::kIoError, "output directory '" + dir.string() + "' cannot be created");
    }
    const auto probe = dir / ".fmcwsar_write_probe";
    {
        std::ofstream os(probe);
        if (!os) {
            throw Error(ErrorCode::kIoError, "output directory '" + dir.string() + "' is not writable");
        }
    }
    std::filesystem::remove(probe, ec);
}

}  // namespace fmcwsar
