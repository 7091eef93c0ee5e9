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

#include <cstdint>
#include <string>
#include <vector>

#include "qkl/learn.hpp"
#include "qkl/spectral.hpp"

namespace qkl {

// Everything in this module is deterministic given the master seed: each
// (experiment, d, seed index, purpose) cell owns a derived sub-seed.

struct DatasetMeta {
    std::uint64_t data_seed = 0;  // drives inputs and noise
    std::uint64_t v_seed = 0;     // drives the entangler (after any redraws)
    int d = 0;
    Entangler entangler = Entangler::haar;
    int depth = 0;
    double noise_variance = 0.0;
    double scale_c = 0.0;
    int redraws = 0;
};

struct Dataset {
    PointSet inputs;    // componentwise in [0, 2pi]
    RVector labels;     // c * f*(x) + noise
    RVector noiseless;  // c * f*(x)
    DatasetMeta meta;
};

/// Labels from the first-qubit observable: f*(x) = Tr[rho_1^V(x) sigma_z],
/// rescaled so the noiseless labels have unit sample variance. Throws
/// DegenerateTargetError when f* is numerically constant over the draw.
Dataset generate_dataset(int d, int n, const FeatureMap& map, double noise_variance,
                         std::uint64_t data_seed);

struct ExperimentConfig {
    std::vector<int> d_range{2, 3, 4, 5, 6, 7};
    int n = 200;
    int num_seeds = 10;
    double noise_variance = 1e-4;
    double train_fraction = 2.0 / 3.0;
    bool lambda_grid = false;
    double lambda_full = 1e-3;    // full and rbf kernels
    double lambda_biased = 0.0;   // biased kernels; falls back to 1e-10 if refused
    std::vector<KernelKind> kernels{KernelKind::biased, KernelKind::biased_wrong,
                                    KernelKind::full, KernelKind::rbf};
    Entangler entangler = Entangler::haar;
    int layers_depth = 0;  // 0 means d^2
    std::uint64_t master_seed = 42;
};

/// The 15-point logarithmic grid from 1e-6 to 1e4.
std::vector<double> lambda_grid_values();

/// One dataset cell: the entangler realized for (d, seed index) plus the
/// dataset generated with it. Degenerate targets are re-drawn under a new
/// V sub-seed and counted in meta.redraws.
struct ExperimentCell {
    FeatureMap map;
    Dataset data;
};
ExperimentCell make_cell(const ExperimentConfig& config, std::uint64_t experiment_id,
                         int d, int seed_index);

struct GeneralizationRow {
    int d = 0;
    int seed = 0;
    KernelKind kernel = KernelKind::full;
    double lambda = 0.0;
    double train_mse = 0.0;
    double test_mse = 0.0;
    bool best_test = true;
};

struct SpectrumRow {
    int d = 0;
    int seed = 0;
    int rank = 0;  // 1-based
    double eigenvalue = 0.0;
};

struct AlignmentRow {
    int d = 0;
    int seed = 0;
    KernelKind kernel = KernelKind::full;
    double kta = 0.0;
};

struct AlignmentCurveRow {
    int d = 0;
    int seed = 0;
    KernelKind kernel = KernelKind::full;
    int component = 0;  // 1-based index i of C(i)
    double cumulative = 0.0;
};

struct HaarMomentRow {
    std::string moment_id;
    double empirical = 0.0;
    double analytic = 0.0;
    double standard_error = 0.0;
};

struct ConcentrationRow {
    int d = 0;
    double mean_deviation = 0.0;  // mean over entries of |E[rho - id/2^m]|
    double variance = 0.0;        // mean over entries of the complex variance
};

/// Train/test split, per-kernel KRR fits, train and test MSE. Under the
/// grid policy every grid point is emitted and the per-(d, seed, kernel)
/// test-MSE winner carries best_test.
std::vector<GeneralizationRow> run_generalization(const ExperimentConfig& config);

/// Top 10 eigenvalues of the uncentered biased-kernel Gram matrix over n
/// points, normalized by n.
std::vector<SpectrumRow> run_spectrum(const ExperimentConfig& config);

struct AlignmentResult {
    std::vector<AlignmentRow> kta_rows;
    std::vector<AlignmentCurveRow> curve_rows;
};

/// Centered kernel-target alignment and the cumulative task-model curve per
/// kernel per seed. The wrong-qubit kernel is skipped when d < 2.
AlignmentResult run_alignment(const ExperimentConfig& config);

/// Haar-moment formulas on U(2^d): E[V_ij V*_i'j'] = delta delta / 2^d and
/// the four-term degree-4 expression with coefficients 1/(2^{2d}-1) and
/// -1/(2^d (2^{2d}-1)).
double haar_first_moment_analytic(int dim, int i, int j, int ip, int jp);
double haar_second_moment_analytic(int dim, int i1, int j1, int i2, int j2, int i1p,
                                   int j1p, int i2p, int j2p);

struct HaarVerification {
    std::vector<HaarMomentRow> rows;
    double first_moment_max_err = 0.0;
    double second_moment_max_err = 0.0;
    bool all_within_tolerance = true;  // every |err| <= 5 standard errors
};

/// Monte-Carlo check of both moment formulas on crafted plus random index
/// tuples; the crafted set exercises all four Weingarten delta patterns.
HaarVerification verify_haar_moments(int d, int num_samples, std::uint64_t master_seed);

struct ConcentrationDetail {
    int d = 0;
    double max_abs_mean = 0.0;
    double max_mean_over_se = 0.0;  // worst |mean| / SE over entries
    bool mean_within_5se = true;
};

struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    std::vector<ConcentrationDetail> details;
};

/// Entry statistics of rho_1^V(x) - id/2 at the fixed probe x = (pi/2, ...)
/// over Haar draws of V; the entry variance should halve per added qubit.
ConcentrationReport verify_concentration(const std::vector<int>& d_range,
                                         int num_unitaries, std::uint64_t master_seed);

struct ShotCostRow {
    int d = 0;
    double rms_signal = 0.0;     // rms of q(x,y) - 1/2 over Haar draws
    double shots_needed = 0.0;   // for relative error 0.1 of the signal
};

/// Measurement cost of resolving the biased-kernel signal, from the
/// Bernoulli variance p(1-p)/shots against the shrinking rms signal.
std::vector<ShotCostRow> estimate_shot_cost(const std::vector<int>& d_range,
                                            int num_unitaries, std::uint64_t master_seed);

struct OracleCheck {
    std::string name;
    bool passed = false;
    double observed = 0.0;  // measured error or value
    double tolerance = 0.0;
};

/// Closed-form checks for the one-qubit cosine embedding: the second-moment
/// operator matrix, its spectrum (1/2, 1/4, 1/4, 0), and the eigenfunctions
/// 1, cos, |sin| on a 50-point grid.
std::vector<OracleCheck> run_spectral_oracle();

}  // namespace qkl
