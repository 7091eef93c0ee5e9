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
#include <cmath>
#include <map>
#include <sstream>

#include "qkl/report.hpp"

namespace qkl {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr double kLeft = 70.0, kRight = 30.0, kTop = 40.0, kBottom = 55.0;

const char* palette(int i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % 8];
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // sorted by x
    bool dashed = false;
    int color = 0;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool log_y = false;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(4);
    out << v;
    return out.str();
}

double map_coord(double v, double lo, double hi, double pix_lo, double pix_hi) {
    const double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
    return pix_lo + t * (pix_hi - pix_lo);
}

std::string render_line_plot(const std::vector<Series>& series, const PlotSpec& spec) {
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            double yy = y;
            if (spec.log_y) {
                yy = std::log10(std::max(y, 1e-18));
            }
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = yy;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, yy);
                y_hi = std::max(y_hi, yy);
            }
        }
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";

    const double px_lo = kLeft, px_hi = kWidth - kRight;
    const double py_lo = kHeight - kBottom, py_hi = kTop;  // y grows upward

    // Axes.
    out << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_hi
        << "\" y2=\"" << py_lo << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_lo
        << "\" y2=\"" << py_hi << "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const double xv = x_lo + t * (x_hi - x_lo) / 4.0;
        const double px = map_coord(xv, x_lo, x_hi, px_lo, px_hi);
        out << "<line x1=\"" << px << "\" y1=\"" << py_lo << "\" x2=\"" << px
            << "\" y2=\"" << py_lo + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << py_lo + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt(xv) << "</text>\n";

        const double yv = y_lo + t * (y_hi - y_lo) / 4.0;
        const double py = map_coord(yv, y_lo, y_hi, py_lo, py_hi);
        out << "<line x1=\"" << px_lo - 5 << "\" y1=\"" << py << "\" x2=\"" << px_lo
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px_lo - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << (spec.log_y ? ("1e" + fmt(yv)) : fmt(yv)) << "</text>\n";
    }
    out << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << spec.xlabel << "</text>\n";
    out << "<text x=\"18\" y=\"" << (py_lo + py_hi) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (py_lo + py_hi) / 2 << ")\">" << spec.ylabel
        << "</text>\n";

    for (const auto& s : series) {
        std::ostringstream path;
        for (const auto& [x, y] : s.points) {
            const double yy = spec.log_y ? std::log10(std::max(y, 1e-18)) : y;
            const double px = map_coord(x, x_lo, x_hi, px_lo, px_hi);
            const double py = map_coord(yy, y_lo, y_hi, py_lo, py_hi);
            path << px << "," << py << " ";
            out << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"3\" fill=\""
                << palette(s.color) << "\"/>\n";
        }
        if (s.points.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << palette(s.color)
                << "\" stroke-width=\"1.8\""
                << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\""
                << path.str() << "\"/>\n";
        }
    }

    double legend_y = kTop + 8;
    for (const auto& s : series) {
        const double lx = px_hi - 170;
        out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 28
            << "\" y2=\"" << legend_y << "\" stroke=\"" << palette(s.color)
            << "\" stroke-width=\"2\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        out << "<text x=\"" << lx + 34 << "\" y=\"" << legend_y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
            << "</text>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_histogram(const std::map<std::string, std::vector<double>>& groups,
                             const PlotSpec& spec) {
    double lo = 0.0, hi = 1.0;
    bool first = true;
    for (const auto& [label, values] : groups) {
        for (const double v : values) {
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (hi == lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const int bins = 24;
    const double width = (hi - lo) / bins;

    std::map<std::string, std::vector<int>> counts;
    int max_count = 1;
    for (const auto& [label, values] : groups) {
        std::vector<int>& c = counts[label];
        c.assign(bins, 0);
        for (const double v : values) {
            int b = static_cast<int>((v - lo) / width);
            b = std::clamp(b, 0, bins - 1);
            max_count = std::max(max_count, ++c[b]);
        }
    }

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";

    const double px_lo = kLeft, px_hi = kWidth - kRight;
    const double py_lo = kHeight - kBottom, py_hi = kTop;
    out << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_hi
        << "\" y2=\"" << py_lo << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px_lo << "\" y1=\"" << py_lo << "\" x2=\"" << px_lo
        << "\" y2=\"" << py_hi << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = lo + t * (hi - lo) / 4.0;
        const double px = map_coord(xv, lo, hi, px_lo, px_hi);
        out << "<text x=\"" << px << "\" y=\"" << py_lo + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt(xv) << "</text>\n";
    }
    out << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << spec.xlabel << "</text>\n";

    const int num_groups = static_cast<int>(groups.size());
    const double bin_px = (px_hi - px_lo) / bins;
    const double bar_px = bin_px / std::max(1, num_groups);
    int group_index = 0;
    double legend_y = kTop + 8;
    for (const auto& [label, values] : groups) {
        const std::vector<int>& c = counts[label];
        for (int b = 0; b < bins; ++b) {
            if (c[b] == 0) {
                continue;
            }
            const double height =
                (py_lo - py_hi) * static_cast<double>(c[b]) / max_count;
            const double x = px_lo + b * bin_px + group_index * bar_px;
            out << "<rect x=\"" << x << "\" y=\"" << py_lo - height << "\" width=\""
                << bar_px * 0.92 << "\" height=\"" << height << "\" fill=\""
                << palette(group_index) << "\" fill-opacity=\"0.75\"/>\n";
        }
        const double lx = px_hi - 150;
        out << "<rect x=\"" << lx << "\" y=\"" << legend_y - 9
            << "\" width=\"16\" height=\"12\" fill=\"" << palette(group_index)
            << "\" fill-opacity=\"0.75\"/>\n";
        out << "<text x=\"" << lx + 22 << "\" y=\"" << legend_y + 2
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
            << "</text>\n";
        legend_y += 18;
        ++group_index;
    }
    out << "</svg>\n";
    return out.str();
}

int kernel_color(KernelKind kind) {
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

std::string svg_mse_vs_qubits(const std::vector<GeneralizationRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("svg_mse_vs_qubits: empty data");
    }
    // Mean of the best_test rows per (kernel, d): collapses both policies.
    std::map<std::pair<KernelKind, int>, std::pair<double, int>> test_acc, train_acc;
    for (const auto& row : rows) {
        if (!row.best_test) {
            continue;
        }
        auto& t = test_acc[{row.kernel, row.d}];
        t.first += row.test_mse;
        t.second += 1;
        auto& tr = train_acc[{row.kernel, row.d}];
        tr.first += row.train_mse;
        tr.second += 1;
    }
    std::map<KernelKind, Series> test_series, train_series;
    for (const auto& [key, acc] : test_acc) {
        Series& s = test_series[key.first];
        s.label = kernel_tag(key.first) + " test";
        s.color = kernel_color(key.first);
        s.points.emplace_back(key.second, acc.first / acc.second);
    }
    for (const auto& [key, acc] : train_acc) {
        Series& s = train_series[key.first];
        s.label = kernel_tag(key.first) + " train";
        s.color = kernel_color(key.first);
        s.dashed = true;
        s.points.emplace_back(key.second, acc.first / acc.second);
    }
    std::vector<Series> series;
    for (auto& [kind, s] : test_series) {
        series.push_back(std::move(s));
    }
    for (auto& [kind, s] : train_series) {
        series.push_back(std::move(s));
    }
    return render_line_plot(series, {"Mean squared error vs qubits", "qubits d",
                                     "MSE (log10)", true});
}

std::string svg_spectrum_vs_qubits(const std::vector<SpectrumRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("svg_spectrum_vs_qubits: empty data");
    }
    std::map<std::pair<int, int>, std::pair<double, int>> acc;  // (rank, d)
    for (const auto& row : rows) {
        if (row.rank > 5) {
            continue;
        }
        auto& a = acc[{row.rank, row.d}];
        a.first += row.eigenvalue;
        a.second += 1;
    }
    std::map<int, Series> by_rank;
    for (const auto& [key, a] : acc) {
        Series& s = by_rank[key.first];
        s.label = "rank " + std::to_string(key.first);
        s.color = key.first - 1;
        s.points.emplace_back(key.second, a.first / a.second);
    }
    std::vector<Series> series;
    for (auto& [rank, s] : by_rank) {
        series.push_back(std::move(s));
    }
    return render_line_plot(series, {"Biased-kernel spectrum vs qubits", "qubits d",
                                     "eigenvalue (log10)", true});
}

std::string svg_kta_histogram(const std::vector<AlignmentRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("svg_kta_histogram: empty data");
    }
    int d_max = rows.front().d;
    for (const auto& row : rows) {
        d_max = std::max(d_max, row.d);
    }
    std::map<std::string, std::vector<double>> groups;
    for (const auto& row : rows) {
        if (row.d == d_max) {
            groups[kernel_tag(row.kernel)].push_back(row.kta);
        }
    }
    return render_histogram(groups, {"Kernel-target alignment, d = " +
                                         std::to_string(d_max),
                                     "centered alignment", "count", false});
}

std::string svg_cumulative_alignment(const std::vector<AlignmentCurveRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("svg_cumulative_alignment: empty data");
    }
    int d_max = rows.front().d;
    for (const auto& row : rows) {
        d_max = std::max(d_max, row.d);
    }
    std::map<std::pair<KernelKind, int>, std::pair<double, int>> acc;
    for (const auto& row : rows) {
        if (row.d != d_max) {
            continue;
        }
        auto& a = acc[{row.kernel, row.component}];
        a.first += row.cumulative;
        a.second += 1;
    }
    std::map<KernelKind, Series> by_kernel;
    for (const auto& [key, a] : acc) {
        Series& s = by_kernel[key.first];
        s.label = kernel_tag(key.first);
        s.color = kernel_color(key.first);
        s.points.emplace_back(key.second, a.first / a.second);
    }
    std::vector<Series> series;
    for (auto& [kind, s] : by_kernel) {
        std::sort(s.points.begin(), s.points.end());
        series.push_back(std::move(s));
    }
    return render_line_plot(series, {"Task-model alignment, d = " + std::to_string(d_max),
                                     "component i", "C(i)", false});
}

}  // namespace qkl
