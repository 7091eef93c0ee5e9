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

#include "qkl/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qkl/errors.hpp"
#include "qkl/parallel.hpp"

namespace qkl {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream identifiers for sub-seed derivation.
constexpr std::uint64_t kGeneralizationId = 1;
constexpr std::uint64_t kSpectrumId = 2;
constexpr std::uint64_t kAlignmentId = 3;
constexpr std::uint64_t kHaarId = 4;
constexpr std::uint64_t kConcentrationId = 5;
constexpr std::uint64_t kShotCostId = 6;

constexpr std::uint64_t kPurposeV = 1;
constexpr std::uint64_t kPurposeData = 2;

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

double default_lambda(const ExperimentConfig& config, KernelKind kind) {
    return (kind == KernelKind::biased || kind == KernelKind::biased_wrong)
               ? config.lambda_biased
               : config.lambda_full;
}

// lambda = 0 on a rank-deficient biased Gram matrix trips the singularity
// guard; the documented fallback is 1e-10, recorded via the row's lambda.
RegressionModel fit_with_fallback(const KernelMatrix& k, const RVector& y,
                                  double lambda, double* lambda_used) {
    try {
        RegressionModel model = krr_fit(k, y, lambda);
        *lambda_used = lambda;
        return model;
    } catch (const SingularSystemError&) {
        if (lambda != 0.0) {
            throw;
        }
        RegressionModel model = krr_fit(k, y, 1e-10);
        *lambda_used = 1e-10;
        return model;
    }
}

void validate_config(const ExperimentConfig& config) {
    if (config.d_range.empty()) {
        throw std::invalid_argument("ExperimentConfig: empty d_range");
    }
    for (const int d : config.d_range) {
        if (d < 1) {
            throw std::invalid_argument("ExperimentConfig: d must be >= 1");
        }
    }
    if (config.n < 3 || config.num_seeds < 1) {
        throw std::invalid_argument("ExperimentConfig: need n >= 3 and seeds >= 1");
    }
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw std::invalid_argument("ExperimentConfig: train_fraction must be in (0,1)");
    }
    if (config.kernels.empty()) {
        throw std::invalid_argument("ExperimentConfig: no kernels selected");
    }
    if (config.noise_variance < 0.0) {
        throw std::invalid_argument("ExperimentConfig: negative noise variance");
    }
}

struct CellIndex {
    int d = 0;
    int seed = 0;
};

std::vector<CellIndex> enumerate_cells(const ExperimentConfig& config) {
    std::vector<CellIndex> cells;
    cells.reserve(config.d_range.size() * static_cast<std::size_t>(config.num_seeds));
    for (const int d : config.d_range) {
        for (int seed = 0; seed < config.num_seeds; ++seed) {
            cells.push_back({d, seed});
        }
    }
    return cells;
}

}  // namespace

Dataset generate_dataset(int d, int n, const FeatureMap& map, double noise_variance,
                         std::uint64_t data_seed) {
    if (d < 1 || n < 2) {
        throw std::invalid_argument("generate_dataset: need d >= 1 and n >= 2");
    }
    if (map.num_qubits() != d) {
        throw std::invalid_argument("generate_dataset: map dimension mismatch");
    }
    if (noise_variance < 0.0) {
        throw std::invalid_argument("generate_dataset: negative noise variance");
    }

    Rng rng(data_seed);
    Dataset data;
    data.inputs.resize(n, std::vector<double>(d));
    for (auto& point : data.inputs) {
        for (auto& value : point) {
            value = rng.uniform(0.0, 2.0 * kPi);
        }
    }

    const int keep[1] = {0};
    RVector target(n);
    for (int i = 0; i < n; ++i) {
        const CMatrix reduced = map.reduced(data.inputs[i], keep);
        target(i) = reduced(0, 0).real() - reduced(1, 1).real();
    }

    const double mean = target.mean();
    const double variance = target.squaredNorm() / n - mean * mean;
    if (variance < 1e-12) {
        throw DegenerateTargetError(
            "generate_dataset: target variance below 1e-12; redraw V");
    }
    const double c = 1.0 / std::sqrt(variance);

    data.noiseless = c * target;
    data.labels = data.noiseless;
    const double noise_sd = std::sqrt(noise_variance);
    for (int i = 0; i < n; ++i) {
        data.labels(i) += noise_sd * rng.normal();
    }

    data.meta.data_seed = data_seed;
    data.meta.v_seed = map.config().seed;
    data.meta.d = d;
    data.meta.entangler = map.config().entangler;
    data.meta.depth = map.config().depth;
    data.meta.noise_variance = noise_variance;
    data.meta.scale_c = c;
    return data;
}

std::vector<double> lambda_grid_values() {
    std::vector<double> grid(15);
    for (int g = 0; g < 15; ++g) {
        grid[g] = std::pow(10.0, -6.0 + 10.0 * g / 14.0);
    }
    grid.front() = 1e-6;
    grid.back() = 1e4;
    return grid;
}

ExperimentCell make_cell(const ExperimentConfig& config, std::uint64_t experiment_id,
                         int d, int seed_index) {
    const std::uint64_t data_seed =
        derive_seed(config.master_seed,
                    {experiment_id, static_cast<std::uint64_t>(d),
                     static_cast<std::uint64_t>(seed_index), kPurposeData});
    const int max_attempts = 16;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        FeatureMapConfig map_cfg;
        map_cfg.num_qubits = d;
        map_cfg.entangler = config.entangler;
        map_cfg.depth = config.layers_depth > 0 ? config.layers_depth : d * d;
        map_cfg.seed =
            derive_seed(config.master_seed,
                        {experiment_id, static_cast<std::uint64_t>(d),
                         static_cast<std::uint64_t>(seed_index), kPurposeV,
                         static_cast<std::uint64_t>(attempt)});
        FeatureMap map(map_cfg);
        try {
            Dataset data =
                generate_dataset(d, config.n, map, config.noise_variance, data_seed);
            data.meta.redraws = attempt;
            return ExperimentCell{std::move(map), std::move(data)};
        } catch (const DegenerateTargetError&) {
            if (attempt + 1 == max_attempts) {
                throw;
            }
        }
    }
    throw DegenerateTargetError("make_cell: unreachable");
}

std::vector<GeneralizationRow> run_generalization(const ExperimentConfig& config) {
    validate_config(config);
    const int n_train = std::clamp<int>(
        static_cast<int>(std::llround(config.train_fraction * config.n)), 1,
        config.n - 1);

    const std::vector<CellIndex> cells = enumerate_cells(config);
    std::vector<std::vector<GeneralizationRow>> per_cell(cells.size());
    const std::vector<double> grid = lambda_grid_values();

    parallel_for(cells.size(), [&](std::size_t c) {
        const auto [d, seed] = cells[c];
        const ExperimentCell cell = make_cell(config, kGeneralizationId, d, seed);

        const PointSet train_points(cell.data.inputs.begin(),
                                    cell.data.inputs.begin() + n_train);
        const PointSet test_points(cell.data.inputs.begin() + n_train,
                                   cell.data.inputs.end());
        const RVector y_train = cell.data.labels.head(n_train);
        const RVector y_test = cell.data.labels.tail(config.n - n_train);

        std::vector<GeneralizationRow>& rows = per_cell[c];
        for (const KernelKind kind : config.kernels) {
            if (kind == KernelKind::biased_wrong && d < 2) {
                continue;  // no second qubit to project onto
            }
            const KernelMatrix k_train = gram(train_points, kind, cell.map);
            const RMatrix k_cross =
                cross_gram(test_points, train_points, kind, cell.map);

            const std::vector<double> lambdas =
                config.lambda_grid ? grid
                                   : std::vector<double>{default_lambda(config, kind)};
            const std::size_t first_row = rows.size();
            for (const double lambda : lambdas) {
                double lambda_used = lambda;
                const RegressionModel model =
                    fit_with_fallback(k_train, y_train, lambda, &lambda_used);
                GeneralizationRow row;
                row.d = d;
                row.seed = seed;
                row.kernel = kind;
                row.lambda = lambda_used;
                row.train_mse = mse(krr_predict(model, k_train.entries), y_train);
                row.test_mse = mse(krr_predict(model, k_cross), y_test);
                row.best_test = false;
                rows.push_back(row);
            }
            std::size_t best = first_row;
            for (std::size_t r = first_row; r < rows.size(); ++r) {
                if (rows[r].test_mse < rows[best].test_mse) {
                    best = r;
                }
            }
            rows[best].best_test = true;
        }
    });

    std::vector<GeneralizationRow> merged;
    for (const auto& rows : per_cell) {
        merged.insert(merged.end(), rows.begin(), rows.end());
    }
    std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.seed != b.seed) return a.seed < b.seed;
        const int ka = kernel_sort_order(a.kernel), kb = kernel_sort_order(b.kernel);
        if (ka != kb) return ka < kb;
        return a.lambda < b.lambda;
    });
    return merged;
}

std::vector<SpectrumRow> run_spectrum(const ExperimentConfig& config) {
    validate_config(config);
    if (std::find(config.kernels.begin(), config.kernels.end(), KernelKind::biased) ==
        config.kernels.end()) {
        throw std::invalid_argument("run_spectrum: requires the biased kernel");
    }

    const std::vector<CellIndex> cells = enumerate_cells(config);
    std::vector<std::vector<SpectrumRow>> per_cell(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) {
        const auto [d, seed] = cells[c];
        const ExperimentCell cell = make_cell(config, kSpectrumId, d, seed);
        const SpectralDecomposition spec =
            gram_spectrum(gram(cell.data.inputs, KernelKind::biased, cell.map));
        const int count =
            static_cast<int>(std::min<Eigen::Index>(10, spec.eigenvalues.size()));
        for (int rank = 1; rank <= count; ++rank) {
            per_cell[c].push_back({d, seed, rank, spec.eigenvalues(rank - 1)});
        }
    });

    std::vector<SpectrumRow> merged;
    for (const auto& rows : per_cell) {
        merged.insert(merged.end(), rows.begin(), rows.end());
    }
    return merged;
}

AlignmentResult run_alignment(const ExperimentConfig& config) {
    validate_config(config);
    const std::vector<CellIndex> cells = enumerate_cells(config);
    std::vector<AlignmentResult> per_cell(cells.size());

    parallel_for(cells.size(), [&](std::size_t c) {
        const auto [d, seed] = cells[c];
        const ExperimentCell cell = make_cell(config, kAlignmentId, d, seed);
        RVector y = cell.data.labels;
        y.array() -= y.mean();

        for (const KernelKind kind : config.kernels) {
            if (kind == KernelKind::biased_wrong && d < 2) {
                continue;
            }
            const KernelMatrix centered =
                center_gram(gram(cell.data.inputs, kind, cell.map));
            per_cell[c].kta_rows.push_back(
                {d, seed, kind, kernel_target_alignment(centered, y, true)});
            const RVector curve = task_model_alignment(centered, y);
            for (Eigen::Index i = 0; i < curve.size(); ++i) {
                per_cell[c].curve_rows.push_back(
                    {d, seed, kind, static_cast<int>(i + 1), curve(i)});
            }
        }
    });

    AlignmentResult merged;
    for (const auto& cell : per_cell) {
        merged.kta_rows.insert(merged.kta_rows.end(), cell.kta_rows.begin(),
                               cell.kta_rows.end());
        merged.curve_rows.insert(merged.curve_rows.end(), cell.curve_rows.begin(),
                                 cell.curve_rows.end());
    }
    return merged;
}

double haar_first_moment_analytic(int dim, int i, int j, int ip, int jp) {
    return (i == ip && j == jp) ? 1.0 / static_cast<double>(dim) : 0.0;
}

double haar_second_moment_analytic(int dim, int i1, int j1, int i2, int j2, int i1p,
                                   int j1p, int i2p, int j2p) {
    const double d = static_cast<double>(dim);
    const double plus = 1.0 / (d * d - 1.0);
    const double minus = -1.0 / (d * (d * d - 1.0));
    double value = 0.0;
    if (i1 == i1p && j1 == j1p && i2 == i2p && j2 == j2p) value += plus;
    if (i1 == i2p && j1 == j2p && i2 == i1p && j2 == j1p) value += plus;
    if (i1 == i1p && j1 == j2p && i2 == i2p && j2 == j1p) value += minus;
    if (i1 == i2p && j1 == j1p && i2 == i1p && j2 == j2p) value += minus;
    return value;
}

namespace {

struct MomentAccumulator {
    double sum_re = 0.0, sum_im = 0.0;
    double sum_re2 = 0.0, sum_im2 = 0.0;

    void add(Complex z) {
        sum_re += z.real();
        sum_im += z.imag();
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
    }

    void merge(const MomentAccumulator& other) {
        sum_re += other.sum_re;
        sum_im += other.sum_im;
        sum_re2 += other.sum_re2;
        sum_im2 += other.sum_im2;
    }
};

struct ComponentStats {
    double mean = 0.0;
    double se = 0.0;
};

ComponentStats stats_re(const MomentAccumulator& acc, int n) {
    const double mean = acc.sum_re / n;
    const double var = std::max(0.0, acc.sum_re2 / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

ComponentStats stats_im(const MomentAccumulator& acc, int n) {
    const double mean = acc.sum_im / n;
    const double var = std::max(0.0, acc.sum_im2 / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

}  // namespace

HaarVerification verify_haar_moments(int d, int num_samples, std::uint64_t master_seed) {
    if (d < 1 || d > 4) {
        throw std::invalid_argument("verify_haar_moments: d must be in 1..4");
    }
    if (num_samples < 100) {
        throw std::invalid_argument("verify_haar_moments: need at least 100 samples");
    }
    const int dim = 1 << d;

    using First = std::array<int, 4>;
    using Second = std::array<int, 8>;
    std::vector<First> first_tuples = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 0},
        {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 1, 0},
    };
    // Crafted coincidence patterns: each of the four Weingarten delta terms
    // is switched on by at least one of these.
    std::vector<Second> second_tuples = {
        {0, 0, 0, 0, 0, 0, 0, 0},  // all four terms
        {0, 0, 1, 0, 0, 0, 1, 0},  // direct term + one minus term (shared column)
        {0, 0, 0, 1, 0, 0, 0, 1},  // direct term + one minus term (shared row)
        {0, 0, 1, 1, 0, 0, 1, 1},  // direct term only
        {0, 0, 1, 1, 1, 1, 0, 0},  // exchanged term only
        {0, 0, 0, 0, 1, 1, 1, 1},  // no coincidence: expectation zero
        {0, 0, 1, 0, 0, 1, 1, 1},  // no coincidence: expectation zero
    };
    Rng tuple_rng(derive_seed(master_seed, {kHaarId, 1}));
    for (int t = 0; t < 6; ++t) {
        First f;
        for (auto& idx : f) {
            idx = static_cast<int>(tuple_rng.uniform_int(dim));
        }
        first_tuples.push_back(f);
    }
    while (second_tuples.size() < 52) {
        Second s;
        for (auto& idx : s) {
            idx = static_cast<int>(tuple_rng.uniform_int(dim));
        }
        second_tuples.push_back(s);
    }

    // Per-sample seeds keep the estimate independent of the thread count.
    const int block_size = 256;
    const int num_blocks = (num_samples + block_size - 1) / block_size;
    std::vector<std::vector<MomentAccumulator>> first_partials(
        num_blocks, std::vector<MomentAccumulator>(first_tuples.size()));
    std::vector<std::vector<MomentAccumulator>> second_partials(
        num_blocks, std::vector<MomentAccumulator>(second_tuples.size()));

    parallel_for(num_blocks, [&](std::size_t block) {
        const int begin = static_cast<int>(block) * block_size;
        const int end = std::min(num_samples, begin + block_size);
        for (int s = begin; s < end; ++s) {
            Rng rng(derive_seed(master_seed,
                                {kHaarId, 2, static_cast<std::uint64_t>(s)}));
            const CMatrix u = haar_random_unitary(dim, rng);
            for (std::size_t t = 0; t < first_tuples.size(); ++t) {
                const auto& f = first_tuples[t];
                first_partials[block][t].add(u(f[0], f[1]) * std::conj(u(f[2], f[3])));
            }
            for (std::size_t t = 0; t < second_tuples.size(); ++t) {
                const auto& q = second_tuples[t];
                second_partials[block][t].add(u(q[0], q[1]) * u(q[2], q[3]) *
                                              std::conj(u(q[4], q[5])) *
                                              std::conj(u(q[6], q[7])));
            }
        }
    });

    std::vector<MomentAccumulator> first_acc(first_tuples.size());
    std::vector<MomentAccumulator> second_acc(second_tuples.size());
    for (int block = 0; block < num_blocks; ++block) {
        for (std::size_t t = 0; t < first_tuples.size(); ++t) {
            first_acc[t].merge(first_partials[block][t]);
        }
        for (std::size_t t = 0; t < second_tuples.size(); ++t) {
            second_acc[t].merge(second_partials[block][t]);
        }
    }

    HaarVerification result;
    auto push_rows = [&](const std::string& id, const MomentAccumulator& acc,
                         double analytic, double* max_err) {
        const ComponentStats re = stats_re(acc, num_samples);
        const ComponentStats im = stats_im(acc, num_samples);
        result.rows.push_back({id + ".re", re.mean, analytic, re.se});
        result.rows.push_back({id + ".im", im.mean, 0.0, im.se});
        *max_err = std::max({*max_err, std::abs(re.mean - analytic), std::abs(im.mean)});
        if (std::abs(re.mean - analytic) > 5.0 * re.se + 1e-12 ||
            std::abs(im.mean) > 5.0 * im.se + 1e-12) {
            result.all_within_tolerance = false;
        }
    };

    for (std::size_t t = 0; t < first_tuples.size(); ++t) {
        const auto& f = first_tuples[t];
        std::ostringstream id;
        id << "m1[" << f[0] << "," << f[1] << ";" << f[2] << "," << f[3] << "]";
        push_rows(id.str(), first_acc[t],
                  haar_first_moment_analytic(dim, f[0], f[1], f[2], f[3]),
                  &result.first_moment_max_err);
    }
    for (std::size_t t = 0; t < second_tuples.size(); ++t) {
        const auto& q = second_tuples[t];
        std::ostringstream id;
        id << "m2[" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << ";" << q[4]
           << "," << q[5] << "," << q[6] << "," << q[7] << "]";
        push_rows(id.str(), second_acc[t],
                  haar_second_moment_analytic(dim, q[0], q[1], q[2], q[3], q[4], q[5],
                                              q[6], q[7]),
                  &result.second_moment_max_err);
    }
    return result;
}

ConcentrationReport verify_concentration(const std::vector<int>& d_range,
                                         int num_unitaries,
                                         std::uint64_t master_seed) {
    if (d_range.empty() || num_unitaries < 10) {
        throw std::invalid_argument("verify_concentration: bad arguments");
    }
    ConcentrationReport report;
    const int keep[1] = {0};

    for (const int d : d_range) {
        const std::vector<double> probe(d, kPi / 2.0);
        const int block_size = 32;
        const int num_blocks = (num_unitaries + block_size - 1) / block_size;
        // One accumulator per entry of the 2x2 deviation matrix.
        std::vector<std::array<MomentAccumulator, 4>> partials(num_blocks);

        parallel_for(num_blocks, [&](std::size_t block) {
            const int begin = static_cast<int>(block) * block_size;
            const int end = std::min(num_unitaries, begin + block_size);
            for (int v = begin; v < end; ++v) {
                FeatureMapConfig cfg;
                cfg.num_qubits = d;
                cfg.entangler = Entangler::haar;
                cfg.seed = derive_seed(master_seed,
                                       {kConcentrationId, static_cast<std::uint64_t>(d),
                                        static_cast<std::uint64_t>(v)});
                const FeatureMap map(cfg);
                const CMatrix reduced = map.reduced(probe, keep);
                const CMatrix dev = reduced - 0.5 * CMatrix::Identity(2, 2);
                for (int e = 0; e < 4; ++e) {
                    partials[block][e].add(dev(e / 2, e % 2));
                }
            }
        });

        std::array<MomentAccumulator, 4> acc;
        for (int block = 0; block < num_blocks; ++block) {
            for (int e = 0; e < 4; ++e) {
                acc[e].merge(partials[block][e]);
            }
        }

        ConcentrationRow row;
        row.d = d;
        ConcentrationDetail detail;
        detail.d = d;
        for (int e = 0; e < 4; ++e) {
            const double mean_re = acc[e].sum_re / num_unitaries;
            const double mean_im = acc[e].sum_im / num_unitaries;
            const double abs_mean = std::hypot(mean_re, mean_im);
            const double second = (acc[e].sum_re2 + acc[e].sum_im2) / num_unitaries;
            const double variance = std::max(0.0, second - abs_mean * abs_mean);
            row.mean_deviation += abs_mean / 4.0;
            row.variance += variance / 4.0;
            const double se = std::sqrt(variance / num_unitaries);
            detail.max_abs_mean = std::max(detail.max_abs_mean, abs_mean);
            if (se > 0.0) {
                detail.max_mean_over_se =
                    std::max(detail.max_mean_over_se, abs_mean / se);
            }
        }
        detail.mean_within_5se = detail.max_mean_over_se <= 5.0;
        report.rows.push_back(row);
        report.details.push_back(detail);
    }
    return report;
}

std::vector<ShotCostRow> estimate_shot_cost(const std::vector<int>& d_range,
                                            int num_unitaries,
                                            std::uint64_t master_seed) {
    if (d_range.empty() || num_unitaries < 10) {
        throw std::invalid_argument("estimate_shot_cost: bad arguments");
    }
    std::vector<ShotCostRow> rows;
    for (const int d : d_range) {
        Rng pair_rng(
            derive_seed(master_seed, {kShotCostId, static_cast<std::uint64_t>(d), 0}));
        std::vector<double> x(d), y(d);
        for (int k = 0; k < d; ++k) {
            x[k] = pair_rng.uniform(0.0, 2.0 * kPi);
        }
        for (int k = 0; k < d; ++k) {
            y[k] = pair_rng.uniform(0.0, 2.0 * kPi);
        }

        std::vector<double> q_values(num_unitaries);
        parallel_for(static_cast<std::size_t>(num_unitaries), [&](std::size_t v) {
            FeatureMapConfig cfg;
            cfg.num_qubits = d;
            cfg.entangler = Entangler::haar;
            cfg.seed = derive_seed(master_seed,
                                   {kShotCostId, static_cast<std::uint64_t>(d), 1, v});
            cfg.projection = std::vector<int>{0};
            const FeatureMap map(cfg);
            q_values[v] = kernel_value(x, y, map);
        });

        double sum_p = 0.0, sum_s2 = 0.0;
        for (const double q : q_values) {
            sum_p += q;
            const double s = q - 0.5;
            sum_s2 += s * s;
        }
        const double p_bar = sum_p / num_unitaries;
        const double rms = std::sqrt(sum_s2 / num_unitaries);

        ShotCostRow row;
        row.d = d;
        row.rms_signal = rms;
        const double target_se = 0.1 * rms;
        row.shots_needed = p_bar * (1.0 - p_bar) / (target_se * target_se);
        rows.push_back(row);
    }
    return rows;
}

std::vector<OracleCheck> run_spectral_oracle() {
    std::vector<OracleCheck> checks;
    FeatureMapConfig cfg;
    cfg.num_qubits = 1;
    const FeatureMap map(cfg);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);

    const CMatrix a_mu = second_moment_operator(map, measure);
    CMatrix closed_form(4, 4);
    closed_form << 3, 0, 0, 1,
                   0, 1, -1, 0,
                   0, -1, 1, 0,
                   1, 0, 0, 3;
    closed_form /= 8.0;
    const double entry_err = (a_mu - closed_form).cwiseAbs().maxCoeff();
    checks.push_back({"second_moment_entries", entry_err <= 1e-8, entry_err, 1e-8});

    const SpectralDecomposition spec = operator_spectrum(a_mu);
    const double expected_eigs[4] = {0.5, 0.25, 0.25, 0.0};
    double eig_err = 0.0;
    for (int i = 0; i < 4; ++i) {
        eig_err = std::max(eig_err, std::abs(spec.eigenvalues(i) - expected_eigs[i]));
    }
    checks.push_back(
        {"eigenvalues_half_quarter_quarter_zero", eig_err <= 1e-6, eig_err, 1e-6});

    Observable h3;
    h3.num_qubits = 1;
    const Complex im{0.0, 1.0};
    h3.entries = CMatrix{{0.0, im}, {-im, 0.0}};
    double err_const = 0.0, err_cos = 0.0, err_sin = 0.0;
    std::array<std::vector<double>, 4> grid_f;
    std::vector<double> grid_x;
    for (int g = 0; g < 50; ++g) {
        const double x = -kPi + 2.0 * kPi * g / 49.0;
        grid_x.push_back(x);
        const std::vector<double> point{x};
        err_const = std::max(
            err_const,
            std::abs(eigenfunction_eval(Observable::identity(1), point, map) - 1.0));
        err_cos =
            std::max(err_cos, std::abs(eigenfunction_eval(Observable::sigma_z(), point,
                                                          map) -
                                       std::cos(x)));
        err_sin =
            std::max(err_sin, std::abs(std::abs(eigenfunction_eval(h3, point, map)) -
                                       std::abs(std::sin(x))));
        for (int i = 0; i < 4; ++i) {
            Observable obs;
            obs.num_qubits = 1;
            obs.entries = spec.eigen_matrices[static_cast<std::size_t>(i)];
            grid_f[i].push_back(eigenfunction_eval(obs, point, map));
        }
    }
    checks.push_back({"eigenfunction_constant", err_const <= 1e-6, err_const, 1e-6});
    checks.push_back({"eigenfunction_cosine", err_cos <= 1e-6, err_cos, 1e-6});
    checks.push_back({"eigenfunction_sine_magnitude", err_sin <= 1e-6, err_sin, 1e-6});

    // Mercer reconstruction from the computed eigen-matrices on the grid.
    double mercer_err = 0.0;
    for (std::size_t gx = 0; gx < grid_x.size(); ++gx) {
        for (std::size_t gy = 0; gy < grid_x.size(); ++gy) {
            double rebuilt = 0.0;
            for (int i = 0; i < 4; ++i) {
                if (spec.eigenvalues(i) > 0.0) {
                    rebuilt += grid_f[i][gx] * grid_f[i][gy];
                }
            }
            const std::vector<double> px{grid_x[gx]}, py{grid_x[gy]};
            mercer_err =
                std::max(mercer_err, std::abs(rebuilt - cosine_kernel(px, py)));
        }
    }
    checks.push_back({"mercer_reconstruction", mercer_err <= 1e-6, mercer_err, 1e-6});

    // The degenerate 1/4-pair spans the plane of sigma_z and the sine
    // eigen-matrix regardless of the basis the solver picked.
    const CVector v1 = vec(spec.eigen_matrices[1]);
    const CVector v2 = vec(spec.eigen_matrices[2]);
    const CMatrix cluster = v1 * v1.adjoint() + v2 * v2.adjoint();
    const CVector w1 = vec(Observable::sigma_z().entries) / std::numbers::sqrt2;
    const CVector w2 = vec(h3.entries) / std::numbers::sqrt2;
    const CMatrix reference = w1 * w1.adjoint() + w2 * w2.adjoint();
    const double cluster_err = (cluster - reference).cwiseAbs().maxCoeff();
    checks.push_back(
        {"degenerate_cluster_projector", cluster_err <= 1e-6, cluster_err, 1e-6});

    return checks;
}

}  // namespace qkl
