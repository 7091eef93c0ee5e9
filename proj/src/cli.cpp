// Copyright 2026 The qkl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkl/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkl/csv.hpp"
#include "qkl/errors.hpp"
#include "qkl/report.hpp"

namespace qkl {

namespace {

constexpr const char* kVersion = "0.1.0";

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Accepted forms: "3", "2..7" (inclusive), and comma lists of either.
std::vector<int> parse_qubit_range(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string token = text.substr(pos, comma - pos);
        const std::size_t dots = token.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(static_cast<int>(csv::parse_int(token)));
            } else {
                const int a = static_cast<int>(csv::parse_int(token.substr(0, dots)));
                const int b = static_cast<int>(csv::parse_int(token.substr(dots + 2)));
                if (b < a) {
                    throw std::invalid_argument("descending range");
                }
                for (int d = a; d <= b; ++d) {
                    out.push_back(d);
                }
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("invalid qubit range: '" + text + "'");
        }
        pos = comma + 1;
        if (comma == text.size()) {
            break;
        }
    }
    if (out.empty()) {
        throw std::invalid_argument("invalid qubit range: '" + text + "'");
    }
    for (const int d : out) {
        if (d < 1 || d > 16) {
            throw std::invalid_argument("qubit count out of supported range 1..16");
        }
    }
    return out;
}

std::vector<KernelKind> parse_kernels(const std::string& text) {
    std::vector<KernelKind> kernels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        kernels.push_back(kernel_from_tag(text.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == text.size()) {
            break;
        }
    }
    return kernels;
}

Entangler parse_entangler(const std::string& text) {
    if (text == "haar") {
        return Entangler::haar;
    }
    if (text == "layers") {
        return Entangler::layers;
    }
    throw std::invalid_argument("entangler must be 'haar' or 'layers'");
}

struct CommonOptions {
    std::string qubits;
    int samples = 200;
    int seeds = 10;
    double noise_var = 1e-4;
    double lambda = 1e-3;
    bool lambda_grid = false;
    std::string kernels = "q,qw,k,rbf";
    std::string entangler = "haar";
    std::string out_dir = "out";
    std::uint64_t seed = 42;
    bool svg = false;
};

void add_common_options(CLI::App* cmd, CommonOptions* opt, bool with_learning) {
    cmd->add_option("--qubits", opt->qubits, "Qubit counts, e.g. 7 or 2..7 or 1,3,5,7")
        ->capture_default_str();
    cmd->add_option("--samples", opt->samples, "Samples per run")->capture_default_str();
    cmd->add_option("--seeds", opt->seeds, "Number of random seeds")
        ->capture_default_str();
    cmd->add_option("--seed", opt->seed, "Master seed")->capture_default_str();
    cmd->add_option("--out", opt->out_dir, "Output directory")->capture_default_str();
    cmd->add_flag("--svg", opt->svg, "Also render SVG plots");
    if (with_learning) {
        cmd->add_option("--noise-var", opt->noise_var, "Label noise variance")
            ->capture_default_str();
        cmd->add_option("--lambda", opt->lambda,
                        "Ridge parameter for the full and rbf kernels (biased kernels "
                        "use 0 with a 1e-10 fallback)")
            ->capture_default_str();
        cmd->add_flag("--lambda-grid", opt->lambda_grid,
                      "Sweep 15 log-spaced ridge values in [1e-6, 1e4]");
        cmd->add_option("--kernels", opt->kernels, "Comma list from {q, qw, k, rbf}")
            ->capture_default_str();
        cmd->add_option("--entangler", opt->entangler, "haar or layers (depth d^2)")
            ->capture_default_str();
    }
}

ExperimentConfig build_config(const CommonOptions& opt) {
    ExperimentConfig config;
    config.d_range = parse_qubit_range(opt.qubits);
    config.n = opt.samples;
    config.num_seeds = opt.seeds;
    config.noise_variance = opt.noise_var;
    config.lambda_grid = opt.lambda_grid;
    config.lambda_full = opt.lambda;
    config.kernels = parse_kernels(opt.kernels);
    config.entangler = parse_entangler(opt.entangler);
    config.master_seed = opt.seed;
    return config;
}

nlohmann::json config_json(const CommonOptions& opt, const std::string& subcommand) {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["qubits"] = parse_qubit_range(opt.qubits);
    j["samples"] = opt.samples;
    j["seeds"] = opt.seeds;
    j["noise_var"] = opt.noise_var;
    j["lambda"] = opt.lambda;
    j["lambda_grid"] = opt.lambda_grid;
    j["kernels"] = opt.kernels;
    j["entangler"] = opt.entangler;
    j["master_seed"] = opt.seed;
    j["svg"] = opt.svg;
    j["out"] = opt.out_dir;
    return j;
}

RunManifest make_manifest(const CommonOptions& opt, const std::string& subcommand) {
    RunManifest manifest;
    manifest.version = kVersion;
    manifest.subcommand = subcommand;
    manifest.master_seed = opt.seed;
    manifest.config = config_json(opt, subcommand);
    return manifest;
}

void add_file(RunManifest* manifest, const fs::path& dir, const std::string& name,
              std::uint64_t rows, double wall_ms) {
    manifest->files.push_back({name, csv::file_checksum(dir / name), rows, wall_ms});
}

int cmd_generalization(const CommonOptions& opt) {
    const auto start = Clock::now();
    const ExperimentConfig config = build_config(opt);
    const std::vector<GeneralizationRow> rows = run_generalization(config);
    const double run_ms = ms_since(start);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    RunManifest manifest = make_manifest(opt, "generalization");
    emit_generalization_csv(rows, dir / "generalization.csv");
    add_file(&manifest, dir, "generalization.csv", rows.size(), run_ms);
    if (opt.svg) {
        write_text_file(svg_mse_vs_qubits(rows), dir / "generalization.svg");
        add_file(&manifest, dir, "generalization.svg", 0, 0.0);
    }
    manifest.total_wall_ms = ms_since(start);
    manifest.write(dir / "manifest.json");
    std::cout << "generalization: " << rows.size() << " rows -> "
              << (dir / "generalization.csv").string() << "\n";
    return 0;
}

int cmd_spectrum(const CommonOptions& opt) {
    const auto start = Clock::now();
    ExperimentConfig config = build_config(opt);
    config.kernels = {KernelKind::biased};
    const std::vector<SpectrumRow> rows = run_spectrum(config);
    const double run_ms = ms_since(start);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    RunManifest manifest = make_manifest(opt, "spectrum");
    emit_spectrum_csv(rows, dir / "spectrum.csv");
    add_file(&manifest, dir, "spectrum.csv", rows.size(), run_ms);
    if (opt.svg) {
        write_text_file(svg_spectrum_vs_qubits(rows), dir / "spectrum.svg");
        add_file(&manifest, dir, "spectrum.svg", 0, 0.0);
    }
    manifest.total_wall_ms = ms_since(start);
    manifest.write(dir / "manifest.json");
    std::cout << "spectrum: " << rows.size() << " rows -> "
              << (dir / "spectrum.csv").string() << "\n";
    return 0;
}

int cmd_alignment(const CommonOptions& opt) {
    const auto start = Clock::now();
    const ExperimentConfig config = build_config(opt);
    const AlignmentResult result = run_alignment(config);
    const double run_ms = ms_since(start);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    RunManifest manifest = make_manifest(opt, "alignment");
    emit_alignment_csv(result.kta_rows, dir / "alignment.csv");
    add_file(&manifest, dir, "alignment.csv", result.kta_rows.size(), run_ms);
    emit_alignment_curve_csv(result.curve_rows, dir / "alignment_curve.csv");
    add_file(&manifest, dir, "alignment_curve.csv", result.curve_rows.size(), 0.0);
    if (opt.svg) {
        write_text_file(svg_kta_histogram(result.kta_rows), dir / "kta_histogram.svg");
        add_file(&manifest, dir, "kta_histogram.svg", 0, 0.0);
        write_text_file(svg_cumulative_alignment(result.curve_rows),
                        dir / "cumulative_alignment.svg");
        add_file(&manifest, dir, "cumulative_alignment.svg", 0, 0.0);
    }
    manifest.total_wall_ms = ms_since(start);
    manifest.write(dir / "manifest.json");
    std::cout << "alignment: " << result.kta_rows.size() << " alignment rows, "
              << result.curve_rows.size() << " curve rows -> " << dir.string() << "\n";
    return 0;
}

int cmd_verify_haar(const CommonOptions& opt) {
    const auto start = Clock::now();
    const std::vector<int> d_range = parse_qubit_range(opt.qubits);
    if (d_range.size() != 1) {
        throw std::invalid_argument("verify-haar expects a single qubit count");
    }
    const HaarVerification report =
        verify_haar_moments(d_range.front(), opt.samples, opt.seed);
    const double run_ms = ms_since(start);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    RunManifest manifest = make_manifest(opt, "verify-haar");
    emit_haar_csv(report.rows, dir / "haar.csv");
    add_file(&manifest, dir, "haar.csv", report.rows.size(), run_ms);
    manifest.total_wall_ms = ms_since(start);
    manifest.write(dir / "manifest.json");

    std::cout << "verify-haar: d=" << d_range.front() << ", " << opt.samples
              << " samples\n"
              << "  first moment max error:  " << report.first_moment_max_err << "\n"
              << "  second moment max error: " << report.second_moment_max_err << "\n"
              << "  within 5 standard errors: "
              << (report.all_within_tolerance ? "yes" : "NO") << "\n";
    return report.all_within_tolerance ? 0 : 2;
}

int cmd_verify_concentration(const CommonOptions& opt) {
    const auto start = Clock::now();
    const std::vector<int> d_range = parse_qubit_range(opt.qubits);
    const ConcentrationReport report =
        verify_concentration(d_range, opt.samples, opt.seed);
    const double run_ms = ms_since(start);

    fs::create_directories(opt.out_dir);
    const fs::path dir(opt.out_dir);
    RunManifest manifest = make_manifest(opt, "verify-concentration");
    emit_concentration_csv(report.rows, dir / "concentration.csv");
    add_file(&manifest, dir, "concentration.csv", report.rows.size(), run_ms);
    manifest.total_wall_ms = ms_since(start);
    manifest.write(dir / "manifest.json");

    bool all_within = true;
    std::cout << "verify-concentration: " << opt.samples << " unitaries\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const auto& detail = report.details[i];
        std::cout << "  d=" << row.d << "  entry variance=" << row.variance
                  << "  mean deviation=" << row.mean_deviation << "  zero-mean within 5 SE: "
                  << (detail.mean_within_5se ? "yes" : "NO") << "\n";
        all_within = all_within && detail.mean_within_5se;
    }

    const int shot_unitaries = std::min(opt.samples, 200);
    const std::vector<ShotCostRow> costs =
        estimate_shot_cost(d_range, shot_unitaries, opt.seed);
    std::cout << "  measurement cost for 10% relative error of q - 1/2 ("
              << shot_unitaries << " unitaries):\n";
    for (const auto& row : costs) {
        std::cout << "    d=" << row.d << "  rms signal=" << row.rms_signal
                  << "  shots needed=" << row.shots_needed << "\n";
    }
    return all_within ? 0 : 2;
}

int cmd_spectral_oracle() {
    const std::vector<OracleCheck> checks = run_spectral_oracle();
    bool all_passed = true;
    std::printf("spectral-oracle: eigenvalues (0.5, 0.25, 0.25, 0)\n");
    for (const auto& check : checks) {
        std::printf("%s  %-36s error=%.3e  tol=%.0e\n", check.passed ? "PASS" : "FAIL",
                    check.name.c_str(), check.observed, check.tolerance);
        all_passed = all_passed && check.passed;
    }
    return all_passed ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Quantum feature-map kernels: spectra, ridge regression, and "
                 "seeded experiment runners"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOptions gen_opt;
    gen_opt.qubits = "2..7";
    CLI::App* gen = app.add_subcommand(
        "generalization", "Train/test MSE per kernel against qubit count");
    add_common_options(gen, &gen_opt, true);

    CommonOptions spec_opt;
    spec_opt.qubits = "5..10";
    CLI::App* spec = app.add_subcommand(
        "spectrum", "Top eigenvalues of the biased-kernel Gram matrix");
    add_common_options(spec, &spec_opt, true);

    CommonOptions align_opt;
    align_opt.qubits = "7";
    align_opt.seeds = 50;
    CLI::App* align = app.add_subcommand(
        "alignment", "Centered kernel-target alignment and task-model curves");
    add_common_options(align, &align_opt, true);

    CommonOptions haar_opt;
    haar_opt.qubits = "2";
    haar_opt.samples = 10000;
    CLI::App* haar = app.add_subcommand(
        "verify-haar", "Monte-Carlo check of the Haar moment formulas");
    add_common_options(haar, &haar_opt, false);

    CommonOptions conc_opt;
    conc_opt.qubits = "5..8";
    conc_opt.samples = 1000;
    CLI::App* conc = app.add_subcommand(
        "verify-concentration",
        "Concentration of the reduced embedding and its measurement cost");
    add_common_options(conc, &conc_opt, false);

    app.add_subcommand("spectral-oracle",
                       "Closed-form checks for the one-qubit cosine embedding");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) {
            return cmd_generalization(gen_opt);
        }
        if (spec->parsed()) {
            return cmd_spectrum(spec_opt);
        }
        if (align->parsed()) {
            return cmd_alignment(align_opt);
        }
        if (haar->parsed()) {
            return cmd_verify_haar(haar_opt);
        }
        if (conc->parsed()) {
            return cmd_verify_concentration(conc_opt);
        }
        return cmd_spectral_oracle();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qkl
