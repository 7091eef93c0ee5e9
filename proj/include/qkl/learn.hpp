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

#include <optional>

#include "qkl/kernels.hpp"

namespace qkl {

/// Fitted kernel ridge regression model in dual (representer) form.
/// The label mean is subtracted before the solve and stored as an offset.
struct RegressionModel {
    RVector dual_weights;
    double mean_offset = 0.0;
    double lambda = 0.0;

    // Provenance, filled in by the experiment layer for held-out scoring.
    std::optional<PointSet> train_points;
    std::optional<FeatureMapConfig> kernel_cfg;
    std::optional<KernelKind> kernel_kind;
};

/// Solves (K + lambda*id) alpha = y - mean(y). With lambda == 0 the system
/// is first screened: a condition estimate above 1e12 (or a non-positive
/// spectrum) raises SingularSystemError advising lambda > 0.
RegressionModel krr_fit(const KernelMatrix& k_train, const RVector& y, double lambda);

/// k_cross * alpha + mean_offset; k_cross is n_test x n_train.
RVector krr_predict(const RegressionModel& model, const RMatrix& k_cross);

/// Mean squared difference.
double mse(const RVector& prediction, const RVector& truth);

/// Empirical kernel-target alignment <K, yy^T>_F / (|K|_F |yy^T|_F).
/// With `centered` set, the caller passes a centered K and mean-free y.
double kernel_target_alignment(const KernelMatrix& k, const RVector& y, bool centered);

/// Cumulative task-model alignment curve C(i), i = 1..n: the fraction of
/// the label signal captured by the top-i kernel principal components.
RVector task_model_alignment(const KernelMatrix& k_centered, const RVector& y_centered);

}  // namespace qkl
