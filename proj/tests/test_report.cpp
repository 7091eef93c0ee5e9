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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qkl/cli.hpp"
#include "qkl/csv.hpp"
#include "qkl/errors.hpp"
#include "qkl/report.hpp"

using namespace qkl;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("qkl_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run(std::vector<std::string> args) {
    std::vector<const char*> argv{"qkl"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e4, 0.0001396624691244445,
                           123456789.0, -0.0}) {
        const std::string text = csv::format_double(v);
        EXPECT_EQ(csv::parse_double(text), v) << text;
    }
    EXPECT_EQ(csv::format_double(0.25), "0.25");
    EXPECT_THROW(csv::parse_double("1.2.3"), std::invalid_argument);
    EXPECT_THROW(csv::parse_int("12x"), std::invalid_argument);
}

TEST(CsvWriter, HeaderOnlyAndSingleRow) {
    csv::Writer empty({"a", "b"});
    EXPECT_EQ(empty.str(), "a,b\n");

    csv::Writer one({"d", "seed", "kernel", "lambda", "train_mse", "test_mse"});
    one.add_row({std::int64_t{3}, std::int64_t{0}, std::string("q"), 0.0, 0.0, 0.0001});
    const std::string text = one.str();
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
    EXPECT_NE(text.find("3,0,q,0,0,"), std::string::npos);
    EXPECT_EQ(csv::parse_double(csv::parse(text).rows[0][5]), 0.0001);
}

TEST(CsvWriter, QuotesFieldsWithCommas) {
    csv::Writer writer({"moment_id", "value"});
    writer.add_row({std::string("m1[0,1;0,1].re"), 0.5});
    const csv::Table table = csv::parse(writer.str());
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0][0], "m1[0,1;0,1].re");
    EXPECT_EQ(table.rows[0][1], "0.5");
}

TEST(CsvParse, RejectsRaggedRows) {
    EXPECT_THROW(csv::parse("a,b\n1\n"), std::invalid_argument);
    EXPECT_THROW(csv::parse(""), std::invalid_argument);
}

TEST(Checksum, FnvTestVectors) {
    EXPECT_EQ(csv::fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(csv::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(CsvRoundTrip, GeneralizationRows) {
    const fs::path dir = temp_dir("roundtrip_gen");
    std::vector<GeneralizationRow> rows{
        {3, 0, KernelKind::biased, 1e-10, 0.0001, 0.0002, true},
        {3, 0, KernelKind::rbf, 0.001, 1.0 / 3.0, 0.98765432101234567, false},
        {7, 2, KernelKind::full, 0.001, 2.5e-7, 1.0421, true},
    };
    emit_generalization_csv(rows, dir / "g.csv");
    const auto back = parse_generalization_csv(dir / "g.csv");
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(back[i].d, rows[i].d);
        EXPECT_EQ(back[i].seed, rows[i].seed);
        EXPECT_EQ(back[i].kernel, rows[i].kernel);
        EXPECT_EQ(back[i].lambda, rows[i].lambda);
        EXPECT_EQ(back[i].train_mse, rows[i].train_mse);  // bitwise
        EXPECT_EQ(back[i].test_mse, rows[i].test_mse);
        EXPECT_EQ(back[i].best_test, rows[i].best_test);
    }
}

TEST(CsvRoundTrip, HaarAndConcentrationRows) {
    const fs::path dir = temp_dir("roundtrip_haar");
    std::vector<HaarMomentRow> haar{
        {"m1[0,0;0,0].re", 0.250001, 0.25, 0.0001},
        {"m2[0,0,1,1;0,0,1,1].im", -3e-5, 0.0, 2.9e-5},
    };
    emit_haar_csv(haar, dir / "h.csv");
    const auto haar_back = parse_haar_csv(dir / "h.csv");
    ASSERT_EQ(haar_back.size(), 2u);
    EXPECT_EQ(haar_back[0].moment_id, haar[0].moment_id);
    EXPECT_EQ(haar_back[0].empirical, haar[0].empirical);
    EXPECT_EQ(haar_back[1].standard_error, haar[1].standard_error);

    std::vector<ConcentrationRow> conc{{5, 0.001, 0.01}, {6, 0.0005, 0.005}};
    emit_concentration_csv(conc, dir / "c.csv");
    const auto conc_back = parse_concentration_csv(dir / "c.csv");
    ASSERT_EQ(conc_back.size(), 2u);
    EXPECT_EQ(conc_back[1].variance, conc[1].variance);
}

TEST(CsvEmit, RowsSortedByKeyColumns) {
    const fs::path dir = temp_dir("sorting");
    std::vector<SpectrumRow> rows{
        {7, 1, 2, 0.01}, {5, 0, 1, 0.5}, {7, 0, 1, 0.49}, {5, 0, 2, 0.008}};
    emit_spectrum_csv(rows, dir / "s.csv");
    const auto back = parse_spectrum_csv(dir / "s.csv");
    ASSERT_EQ(back.size(), 4u);
    EXPECT_EQ(back[0].d, 5);
    EXPECT_EQ(back[0].rank, 1);
    EXPECT_EQ(back[1].rank, 2);
    EXPECT_EQ(back[2].d, 7);
    EXPECT_EQ(back[2].seed, 0);
    EXPECT_EQ(back[3].seed, 1);
}

TEST(Svg, RendersSeriesAndLegend) {
    std::vector<GeneralizationRow> rows;
    for (int d = 2; d <= 7; ++d) {
        rows.push_back({d, 0, KernelKind::biased, 0.0, 1e-4, 2e-4, true});
        rows.push_back({d, 0, KernelKind::full, 1e-3, 1e-4, d >= 5 ? 0.9 : 0.1, true});
    }
    const std::string svg = svg_mse_vs_qubits(rows);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("q test"), std::string::npos);
    EXPECT_NE(svg.find("k test"), std::string::npos);
    EXPECT_NE(svg.find("polyline"), std::string::npos);
}

TEST(Svg, SinglePointSeriesRenders) {
    std::vector<SpectrumRow> rows{{5, 0, 1, 0.5}};
    const std::string svg = svg_spectrum_vs_qubits(rows);
    EXPECT_NE(svg.find("<circle"), std::string::npos);
}

TEST(Svg, EmptyDataIsRejected) {
    EXPECT_THROW(svg_mse_vs_qubits({}), std::invalid_argument);
    EXPECT_THROW(svg_spectrum_vs_qubits({}), std::invalid_argument);
    EXPECT_THROW(svg_kta_histogram({}), std::invalid_argument);
    EXPECT_THROW(svg_cumulative_alignment({}), std::invalid_argument);
}

TEST(Svg, HistogramAndCurves) {
    std::vector<AlignmentRow> kta;
    for (int seed = 0; seed < 20; ++seed) {
        kta.push_back({7, seed, KernelKind::biased, 0.5 + 0.01 * seed});
        kta.push_back({7, seed, KernelKind::full, 0.05 + 0.002 * seed});
    }
    EXPECT_NE(svg_kta_histogram(kta).find("<rect"), std::string::npos);

    std::vector<AlignmentCurveRow> curves;
    for (int i = 1; i <= 30; ++i) {
        curves.push_back({7, 0, KernelKind::biased, i, std::min(1.0, i / 4.0)});
    }
    EXPECT_NE(svg_cumulative_alignment(curves).find("polyline"), std::string::npos);
}

TEST(Cli, SpectralOracleExitsZero) { EXPECT_EQ(run({"spectral-oracle"}), 0); }

TEST(Cli, InvalidInvocationsExitOne) {
    EXPECT_EQ(run({"no-such-subcommand"}), 1);
    EXPECT_EQ(run({"generalization", "--no-such-flag"}), 1);
    EXPECT_EQ(run({"generalization", "--qubits", "7..2"}), 1);
    EXPECT_EQ(run({"generalization", "--qubits", "abc"}), 1);
    EXPECT_EQ(run({"generalization", "--qubits", "0..2"}), 1);
    EXPECT_EQ(run({"generalization", "--kernels", "q,bogus"}), 1);
    EXPECT_EQ(run({"verify-haar", "--qubits", "2..3"}), 1);
    EXPECT_EQ(run({}), 1);  // missing subcommand
}

TEST(Cli, UnwritableOutputExitsTwo) {
    EXPECT_EQ(run({"generalization", "--qubits", "2", "--seeds", "1", "--samples",
                   "12", "--out", "/proc/qkl_cannot_write_here"}),
              2);
}

TEST(Cli, RowCountMatchesConfiguration) {
    const fs::path dir = temp_dir("rowcount");
    EXPECT_EQ(run({"generalization", "--qubits", "2..3", "--seeds", "2", "--samples",
                   "24", "--out", dir.string()}),
              0);
    const auto rows = parse_generalization_csv(dir / "generalization.csv");
    EXPECT_EQ(rows.size(), 2u * 2u * 4u);
}

TEST(Cli, DeterministicChecksumsAcrossRuns) {
    const fs::path dir_a = temp_dir("det_a");
    const fs::path dir_b = temp_dir("det_b");
    const std::vector<std::string> base{"spectrum", "--qubits",  "5",  "--seeds",
                                        "2",        "--samples", "40", "--seed",
                                        "123",      "--out"};
    auto with_out = [&](const fs::path& dir) {
        std::vector<std::string> args = base;
        args.push_back(dir.string());
        return args;
    };
    EXPECT_EQ(run(with_out(dir_a)), 0);
    EXPECT_EQ(run(with_out(dir_b)), 0);
    EXPECT_EQ(slurp(dir_a / "spectrum.csv"), slurp(dir_b / "spectrum.csv"));

    const auto manifest_a = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
    const auto manifest_b = nlohmann::json::parse(slurp(dir_b / "manifest.json"));
    EXPECT_EQ(manifest_a["files"][0]["checksum"], manifest_b["files"][0]["checksum"]);
    EXPECT_EQ(manifest_a["master_seed"], 123);
    EXPECT_EQ(manifest_a["files"][0]["name"], "spectrum.csv");
}

TEST(Cli, AlignmentEmitsBothCsvFilesAndSvg) {
    const fs::path dir = temp_dir("alignment");
    EXPECT_EQ(run({"alignment", "--qubits", "3", "--seeds", "3", "--samples", "30",
                   "--svg", "--out", dir.string()}),
              0);
    EXPECT_TRUE(fs::exists(dir / "alignment.csv"));
    EXPECT_TRUE(fs::exists(dir / "alignment_curve.csv"));
    EXPECT_TRUE(fs::exists(dir / "kta_histogram.svg"));
    EXPECT_TRUE(fs::exists(dir / "cumulative_alignment.svg"));
    const auto kta = parse_alignment_csv(dir / "alignment.csv");
    EXPECT_EQ(kta.size(), 3u * 4u);
    const auto curve = parse_alignment_curve_csv(dir / "alignment_curve.csv");
    EXPECT_EQ(curve.size(), 3u * 4u * 30u);
}

TEST(Cli, VerifyHaarWritesCsv) {
    const fs::path dir = temp_dir("haarcli");
    EXPECT_EQ(run({"verify-haar", "--qubits", "1", "--samples", "2000", "--out",
                   dir.string()}),
              0);
    const auto rows = parse_haar_csv(dir / "haar.csv");
    EXPECT_GE(rows.size(), 100u);
}

TEST(Manifest, JsonShapeAndWrite) {
    const fs::path dir = temp_dir("manifest");
    RunManifest manifest;
    manifest.version = "0.0.0";
    manifest.subcommand = "spectrum";
    manifest.master_seed = 9;
    manifest.config = {{"qubits", {5, 6}}};
    manifest.files.push_back({"spectrum.csv", "00ff", 20, 12.5});
    manifest.write(dir / "manifest.json");

    const auto parsed = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(parsed["tool"], "qkl");
    EXPECT_EQ(parsed["subcommand"], "spectrum");
    EXPECT_EQ(parsed["files"].size(), 1u);
    EXPECT_EQ(parsed["files"][0]["rows"], 20);
}
