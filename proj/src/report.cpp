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

#include <algorithm>
#include <fstream>

#include "qkl/csv.hpp"
#include "qkl/errors.hpp"
#include "qkl/report.hpp"

namespace qkl {

namespace {

int kernel_sort_order(KernelKind kind) {
    switch (kind) {
        case KernelKind::biased:
            return 0;
        case KernelKind::biased_wrong:
            return 1;
        case KernelKind::full:
            return 2;
        case KernelKind::rbf:
            return 3;
    }
    return 4;
}

}  // namespace

void emit_generalization_csv(std::vector<GeneralizationRow> rows,
                             const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.seed != b.seed) return a.seed < b.seed;
        const int ka = kernel_sort_order(a.kernel), kb = kernel_sort_order(b.kernel);
        if (ka != kb) return ka < kb;
        return a.lambda < b.lambda;
    });
    csv::Writer writer({"d", "seed", "kernel", "lambda", "train_mse", "test_mse",
                        "best_test"});
    for (const auto& row : rows) {
        writer.add_row({std::int64_t{row.d}, std::int64_t{row.seed},
                        kernel_tag(row.kernel), row.lambda, row.train_mse, row.test_mse,
                        std::int64_t{row.best_test ? 1 : 0}});
    }
    writer.write(path);
}

void emit_spectrum_csv(std::vector<SpectrumRow> rows, const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.seed != b.seed) return a.seed < b.seed;
        return a.rank < b.rank;
    });
    csv::Writer writer({"d", "seed", "rank", "eigenvalue"});
    for (const auto& row : rows) {
        writer.add_row({std::int64_t{row.d}, std::int64_t{row.seed},
                        std::int64_t{row.rank}, row.eigenvalue});
    }
    writer.write(path);
}

void emit_alignment_csv(std::vector<AlignmentRow> rows,
                        const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.seed != b.seed) return a.seed < b.seed;
        return kernel_sort_order(a.kernel) < kernel_sort_order(b.kernel);
    });
    csv::Writer writer({"d", "seed", "kernel", "kta"});
    for (const auto& row : rows) {
        writer.add_row({std::int64_t{row.d}, std::int64_t{row.seed},
                        kernel_tag(row.kernel), row.kta});
    }
    writer.write(path);
}

void emit_alignment_curve_csv(std::vector<AlignmentCurveRow> rows,
                              const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.seed != b.seed) return a.seed < b.seed;
        const int ka = kernel_sort_order(a.kernel), kb = kernel_sort_order(b.kernel);
        if (ka != kb) return ka < kb;
        return a.component < b.component;
    });
    csv::Writer writer({"d", "seed", "kernel", "i", "C"});
    for (const auto& row : rows) {
        writer.add_row({std::int64_t{row.d}, std::int64_t{row.seed},
                        kernel_tag(row.kernel), std::int64_t{row.component},
                        row.cumulative});
    }
    writer.write(path);
}

void emit_haar_csv(std::vector<HaarMomentRow> rows, const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.moment_id < b.moment_id;
    });
    csv::Writer writer({"moment_id", "empirical", "analytic", "stderr"});
    for (const auto& row : rows) {
        writer.add_row({row.moment_id, row.empirical, row.analytic, row.standard_error});
    }
    writer.write(path);
}

void emit_concentration_csv(std::vector<ConcentrationRow> rows,
                            const std::filesystem::path& path) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.d < b.d; });
    csv::Writer writer({"d", "mean_dev", "variance"});
    for (const auto& row : rows) {
        writer.add_row({std::int64_t{row.d}, row.mean_deviation, row.variance});
    }
    writer.write(path);
}

namespace {

void expect_header(const csv::Table& table, const std::vector<std::string>& expected,
                   const char* what) {
    if (table.header != expected) {
        throw std::invalid_argument(std::string(what) + ": unexpected header");
    }
}

}  // namespace

std::vector<GeneralizationRow> parse_generalization_csv(
    const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"d", "seed", "kernel", "lambda", "train_mse", "test_mse",
                          "best_test"},
                  "generalization csv");
    std::vector<GeneralizationRow> rows;
    for (const auto& r : table.rows) {
        GeneralizationRow row;
        row.d = static_cast<int>(csv::parse_int(r[0]));
        row.seed = static_cast<int>(csv::parse_int(r[1]));
        row.kernel = kernel_from_tag(r[2]);
        row.lambda = csv::parse_double(r[3]);
        row.train_mse = csv::parse_double(r[4]);
        row.test_mse = csv::parse_double(r[5]);
        row.best_test = csv::parse_int(r[6]) != 0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<SpectrumRow> parse_spectrum_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"d", "seed", "rank", "eigenvalue"}, "spectrum csv");
    std::vector<SpectrumRow> rows;
    for (const auto& r : table.rows) {
        rows.push_back({static_cast<int>(csv::parse_int(r[0])),
                        static_cast<int>(csv::parse_int(r[1])),
                        static_cast<int>(csv::parse_int(r[2])),
                        csv::parse_double(r[3])});
    }
    return rows;
}

std::vector<AlignmentRow> parse_alignment_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"d", "seed", "kernel", "kta"}, "alignment csv");
    std::vector<AlignmentRow> rows;
    for (const auto& r : table.rows) {
        rows.push_back({static_cast<int>(csv::parse_int(r[0])),
                        static_cast<int>(csv::parse_int(r[1])), kernel_from_tag(r[2]),
                        csv::parse_double(r[3])});
    }
    return rows;
}

std::vector<AlignmentCurveRow> parse_alignment_curve_csv(
    const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"d", "seed", "kernel", "i", "C"}, "alignment curve csv");
    std::vector<AlignmentCurveRow> rows;
    for (const auto& r : table.rows) {
        rows.push_back({static_cast<int>(csv::parse_int(r[0])),
                        static_cast<int>(csv::parse_int(r[1])), kernel_from_tag(r[2]),
                        static_cast<int>(csv::parse_int(r[3])),
                        csv::parse_double(r[4])});
    }
    return rows;
}

std::vector<HaarMomentRow> parse_haar_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"moment_id", "empirical", "analytic", "stderr"}, "haar csv");
    std::vector<HaarMomentRow> rows;
    for (const auto& r : table.rows) {
        rows.push_back({r[0], csv::parse_double(r[1]), csv::parse_double(r[2]),
                        csv::parse_double(r[3])});
    }
    return rows;
}

std::vector<ConcentrationRow> parse_concentration_csv(const std::filesystem::path& path) {
    const csv::Table table = csv::read(path);
    expect_header(table, {"d", "mean_dev", "variance"}, "concentration csv");
    std::vector<ConcentrationRow> rows;
    for (const auto& r : table.rows) {
        rows.push_back({static_cast<int>(csv::parse_int(r[0])), csv::parse_double(r[1]),
                        csv::parse_double(r[2])});
    }
    return rows;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("write_text_file: cannot open: " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("write_text_file: write failed: " + path.string());
    }
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = tool;
    j["version"] = version;
    j["subcommand"] = subcommand;
    j["master_seed"] = master_seed;
    j["config"] = config;
    j["total_wall_ms"] = total_wall_ms;
    j["files"] = nlohmann::json::array();
    for (const auto& file : files) {
        j["files"].push_back({{"name", file.name},
                              {"checksum", file.checksum},
                              {"rows", file.rows},
                              {"wall_ms", file.wall_ms}});
    }
    return j;
}

void RunManifest::write(const std::filesystem::path& path) const {
    write_text_file(to_json().dump(2) + "\n", path);
}

}  // namespace qkl
