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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkl/experiments.hpp"

namespace qkl {

// CSV schemas (column order is part of the file format):
//   generalization:  d,seed,kernel,lambda,train_mse,test_mse,best_test
//   spectrum:        d,seed,rank,eigenvalue
//   alignment:       d,seed,kernel,kta
//   alignment_curve: d,seed,kernel,i,C
//   haar:            moment_id,empirical,analytic,stderr
//   concentration:   d,mean_dev,variance
// Rows are written sorted by their key columns; floats use the shortest
// round-trip representation with '.' as the decimal separator.

void emit_generalization_csv(std::vector<GeneralizationRow> rows,
                             const std::filesystem::path& path);
void emit_spectrum_csv(std::vector<SpectrumRow> rows, const std::filesystem::path& path);
void emit_alignment_csv(std::vector<AlignmentRow> rows, const std::filesystem::path& path);
void emit_alignment_curve_csv(std::vector<AlignmentCurveRow> rows,
                              const std::filesystem::path& path);
void emit_haar_csv(std::vector<HaarMomentRow> rows, const std::filesystem::path& path);
void emit_concentration_csv(std::vector<ConcentrationRow> rows,
                            const std::filesystem::path& path);

std::vector<GeneralizationRow> parse_generalization_csv(const std::filesystem::path& path);
std::vector<SpectrumRow> parse_spectrum_csv(const std::filesystem::path& path);
std::vector<AlignmentRow> parse_alignment_csv(const std::filesystem::path& path);
std::vector<AlignmentCurveRow> parse_alignment_curve_csv(const std::filesystem::path& path);
std::vector<HaarMomentRow> parse_haar_csv(const std::filesystem::path& path);
std::vector<ConcentrationRow> parse_concentration_csv(const std::filesystem::path& path);

// Static SVG renderings of the standard figures. All of them throw
// std::invalid_argument on empty input.

/// Mean train (dashed) and test (solid) MSE per kernel against d, log-y.
std::string svg_mse_vs_qubits(const std::vector<GeneralizationRow>& rows);

/// Mean eigenvalue per rank against d, log-y.
std::string svg_spectrum_vs_qubits(const std::vector<SpectrumRow>& rows);

/// Histogram of the kernel-target alignment per kernel at the largest d.
std::string svg_kta_histogram(const std::vector<AlignmentRow>& rows);

/// Mean cumulative alignment curve per kernel at the largest d.
std::string svg_cumulative_alignment(const std::vector<AlignmentCurveRow>& rows);

void write_text_file(const std::string& text, const std::filesystem::path& path);

/// Reproducibility record written next to the emitted files.
struct ManifestFile {
    std::string name;
    std::string checksum;  // fnv1a64 of the file bytes, hex
    std::uint64_t rows = 0;
    double wall_ms = 0.0;
};

struct RunManifest {
    std::string tool = "qkl";
    std::string version;
    std::string subcommand;
    std::uint64_t master_seed = 0;
    nlohmann::json config;
    std::vector<ManifestFile> files;
    double total_wall_ms = 0.0;

    nlohmann::json to_json() const;
    void write(const std::filesystem::path& path) const;
};

}  // namespace qkl
