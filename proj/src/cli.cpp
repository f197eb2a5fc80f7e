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
#include "fmcwsar/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "fmcwsar/config.hpp"
#include "fmcwsar/cube_file.hpp"
#include "fmcwsar/image_io.hpp"
#include "fmcwsar/metrics.hpp"
#include "fmcwsar/parallel.hpp"
#include "fmcwsar/sar_processor.hpp"

namespace fmcwsar::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    bool verbose = false;
};

RunConfig LoadRunConfig(const GlobalFlags& g, bool required) {
    RunConfig cfg;
    if (!g.config.empty()) {
        cfg = LoadConfig(g.config);
    } else if (required) {
        throw Error::InvalidParam("--config", "a run configuration is required for this subcommand");
    }
    if (g.seed) ApplySeed(cfg, *g.seed);
    return cfg;
}

std::string Tagged(const std::string& stem, std::string_view method, std::uint64_t seed, const std::string& ext) {
    return stem + "_" + std::string(method) + "_seed" + std::to_string(seed) + ext;
}

DataCube LoadCube(const std::string& path, const RunConfig& cfg) {
    return io::ToDataCube(io::ReadCube(fs::path(path)), cfg.radar);
}

void LogRun(std::ostream& err, const GlobalFlags& g, const PipelineResult& run) {
    if (!g.verbose) return;
    err << ToString(run.image.method_tag) << ": rcmc " << (run.rcmc_applied ? "applied" : "pass-through")
        << " (max migration " << io::FormatDouble(run.max_migration_m) << " m), azimuth compression "
        << (run.azimuth_compressed ? "applied" : "skipped (single sweep)") << '\n';
}

struct Outputs {
    std::vector<std::pair<fs::path, std::string>> files;
    void Add(fs::path p, std::string contents) { files.emplace_back(std::move(p), std::move(contents)); }
    void Flush() const {
        for (const auto& [path, contents] : files) io::WriteBinaryFile(path, contents);
    }
};

void AddImage(Outputs& outs, const fs::path& dir, const SarImage& img, std::uint64_t seed) {
    const auto tag = ToString(img.method_tag);
    std::ostringstream pgm, csv;
    io::WritePgm(pgm, img);
    io::WriteCsv(csv, img);
    outs.Add(dir / Tagged("image", tag, seed, ".pgm"), pgm.str());
    outs.Add(dir / Tagged("image", tag, seed, ".csv"), csv.str());
}

int Simulate(const GlobalFlags& g, const std::string& out_path, std::ostream& out) {
    const RunConfig cfg = LoadRunConfig(g, true);
    const ValidatedParams p = ValidateParams(cfg.radar);
    PrepareOutputDir(cfg.output_dir);
    const DataCube cube = SimulateCube(p, cfg.scene, cfg.leakage, cfg.noise_sigma, cfg.seed);
    const fs::path path = out_path.empty() ? cfg.output_dir / ("cube_seed" + std::to_string(cfg.seed) + ".fmcwraw")
                                           : fs::path(out_path);
    std::ostringstream bytes;
    io::WriteCube(bytes, cube);
    io::WriteBinaryFile(path, bytes.str());
    out << "n = " << cube.data.rows() << '\n'
        << "m = " << cube.data.cols() << '\n'
        << "bytes = " << bytes.str().size() << '\n'
        << "path = " << path.string() << '\n';
    return kExitOk;
}

int Process(const GlobalFlags& g, const std::string& cube_path, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = LoadRunConfig(g, true);
    const DataCube cube = LoadCube(cube_path, cfg);
    ValidateScene(cube.params, cfg.scene);
    PrepareOutputDir(cfg.output_dir);

    std::vector<Method> methods;
    if (cfg.method != MethodSelection::kProposed) methods.push_back(Method::kConventional);
    if (cfg.method != MethodSelection::kConventional) methods.push_back(Method::kProposed);

    Outputs outs;
    for (Method m : methods) {
        const PipelineResult run = RunPipeline(cube, m);
        LogRun(err, g, run);
        AddImage(outs, cfg.output_dir, run.image, cfg.seed);
        std::string report = cfg.scene.empty() ? std::string("# no scene targets, metrics skipped\n")
                                               : io::FormatReport(ComputeMetrics(run, cube.params, cfg.scene), cfg.seed);
        if (m == Method::kProposed) report += io::FormatEstimates(run.estimates);
        outs.Add(cfg.output_dir / Tagged("report", ToString(m), cfg.seed, ".txt"), report);
    }
    outs.Flush();
    for (const auto& [path, contents] : outs.files) out << "wrote " << path.string() << '\n';
    return kExitOk;
}

int Compare(const GlobalFlags& g, const std::string& cube_path, std::ostream& out, std::ostream& err) {
    const RunConfig cfg = LoadRunConfig(g, true);
    const DataCube cube = LoadCube(cube_path, cfg);
    ValidateScene(cube.params, cfg.scene);
    PrepareOutputDir(cfg.output_dir);

    const PipelineResult conv = RunConventional(cube);
    LogRun(err, g, conv);
    const PipelineResult prop = RunProposed(cube);
    LogRun(err, g, prop);
    const PipelineComparison cmp = ComparePipelines(conv, prop, cube.params, cfg.scene);

    Outputs outs;
    outs.Add(cfg.output_dir / Tagged("report", "conventional", cfg.seed, ".txt"), io::FormatReport(cmp.conventional, cfg.seed));
    outs.Add(cfg.output_dir / Tagged("report", "proposed", cfg.seed, ".txt"),
             io::FormatReport(cmp.proposed, cfg.seed) + io::FormatEstimates(prop.estimates));
    const std::string table = io::FormatComparison(cmp, cfg.seed);
    outs.Add(cfg.output_dir / ("compare_seed" + std::to_string(cfg.seed) + ".txt"), table);
    outs.Flush();
    out << table;

    const bool phase_noise_on = cfg.leakage.amplitude > 0 && cfg.leakage.phase_noise.rms > 0;
    if (phase_noise_on && !(cmp.proposed.noise_floor_db <= cmp.conventional.noise_floor_db)) {
        err << "proposed noise floor is not below the conventional one\n";
        return kExitPipeline;
    }
    return kExitOk;
}

int Report(const GlobalFlags& g, const std::string& cube_path, std::ostream& out) {
    const RunConfig cfg = LoadRunConfig(g, false);
    const DataCube cube = LoadCube(cube_path, cfg);
    const auto h = io::HeaderOf(cube);
    out << "# fmcwsar cube report\n"
        << "path = " << cube_path << '\n'
        << "n = " << h.n << '\n'
        << "m = " << h.m << '\n'
        << "fs = " << io::FormatDouble(h.fs) << '\n'
        << "t_sweep = " << io::FormatDouble(h.t_sweep) << '\n'
        << "f_center = " << io::FormatDouble(h.f_center) << '\n'
        << "bw = " << io::FormatDouble(h.bw) << '\n'
        << "v = " << io::FormatDouble(h.v) << '\n'
        << "range_resolution_m = " << io::FormatDouble(RangeResolution(cube.params)) << '\n'
        << "max_unambiguous_range_m = " << io::FormatDouble(MaxUnambiguousRange(cube.params)) << '\n';
    std::vector<LeakageEstimate> est(cube.data.cols());
    const LeakageEstimator estimator(cube.params);
    ParallelFor(est.size(), [&](std::size_t m) { est[m] = estimator.Estimate(cube.data.col(m)); });
    out << io::FormatEstimates(est);
    return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidParam:
        case ErrorCode::kIoError:
        case ErrorCode::kFormatError:
        case ErrorCode::kDimensionOverflow:
            return kExitInput;
        default:
            return kExitPipeline;
    }
}

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"FMCW SAR simulation and A-SPC image synthesis"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    std::uint64_t seed = 0;
    app.add_option("--config", g.config, "YAML run configuration");
    auto* seed_opt = app.add_option("--seed", seed, "override the configured seed");
    app.add_option("--threads", g.threads, "worker thread cap (0 = all cores)");
    app.add_flag("--verbose", g.verbose, "log pipeline decisions to stderr");

    std::string out_path, cube_path;
    auto* sim = app.add_subcommand("simulate", "simulate a raw cube and write it in FMCWRAW1 format");
    sim->add_option("--out", out_path, "cube file path (default <output_dir>/cube_seed<seed>.fmcwraw)");
    auto* proc = app.add_subcommand("process", "focus a cube with the configured method(s)");
    proc->add_option("--cube", cube_path, "input cube")->required();
    auto* cmp = app.add_subcommand("compare", "run both pipelines and emit paired reports with deltas");
    cmp->add_option("--cube", cube_path, "input cube")->required();
    auto* rep = app.add_subcommand("report", "print cube header and per-sweep leakage estimates");
    rep->add_option("--cube", cube_path, "input cube")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kExitOk : kExitInput;
    }
    if (*seed_opt) g.seed = seed;
    SetMaxThreads(g.threads);

    try {
        if (*sim) return Simulate(g, out_path, out);
        if (*proc) return Process(g, cube_path, out, err);
        if (*cmp) return Compare(g, cube_path, out, err);
        if (*rep) return Report(g, cube_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCodeFor(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitPipeline;
    }
    return kExitInput;
}

}  // namespace fmcwsar::cli
