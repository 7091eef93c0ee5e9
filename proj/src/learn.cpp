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

#include "qkl/learn.hpp"

#include <cmath>
#include <stdexcept>

#include "qkl/errors.hpp"

namespace qkl {

RegressionModel krr_fit(const KernelMatrix& k_train, const RVector& y, double lambda) {
    const Eigen::Index n = k_train.n();
    if (y.size() != n) {
        throw std::invalid_argument("krr_fit: label count does not match kernel size");
    }
    if (lambda < 0.0) {
        throw std::invalid_argument("krr_fit: lambda must be >= 0");
    }

    RegressionModel model;
    model.lambda = lambda;
    model.mean_offset = y.mean();
    const RVector centered = y.array() - model.mean_offset;

    RMatrix system = 0.5 * (k_train.entries + k_train.entries.transpose());
    if (lambda == 0.0) {
        Eigen::SelfAdjointEigenSolver<RMatrix> probe(system, Eigen::EigenvaluesOnly);
        const double low = probe.eigenvalues().minCoeff();
        const double high = probe.eigenvalues().maxCoeff();
        if (low <= 0.0 || high / low > 1e12) {
            throw SingularSystemError(
                "krr_fit: kernel matrix is numerically singular at lambda = 0; "
                "use lambda > 0");
        }
    } else {
        system.diagonal().array() += lambda;
    }

    Eigen::LDLT<RMatrix> solver(system);
    if (solver.info() != Eigen::Success) {
        throw SingularSystemError("krr_fit: factorization failed; use a larger lambda");
    }
    model.dual_weights = solver.solve(centered);
    return model;
}

RVector krr_predict(const RegressionModel& model, const RMatrix& k_cross) {
    if (k_cross.cols() != model.dual_weights.size()) {
        throw std::invalid_argument("krr_predict: column count does not match train size");
    }
    return (k_cross * model.dual_weights).array() + model.mean_offset;
}

double mse(const RVector& prediction, const RVector& truth) {
    if (prediction.size() != truth.size()) {
        throw std::invalid_argument("mse: length mismatch");
    }
    if (prediction.size() == 0) {
        throw std::invalid_argument("mse: empty vectors");
    }
    return (prediction - truth).squaredNorm() / static_cast<double>(prediction.size());
}

double kernel_target_alignment(const KernelMatrix& k, const RVector& y, bool centered) {
    if (y.size() != k.n()) {
        throw std::invalid_argument("kernel_target_alignment: size mismatch");
    }
    (void)centered;  // the caller prepares K and y; the estimator is identical
    const double y_sq = y.squaredNorm();
    const double k_norm = k.entries.norm();
    if (y_sq <= 1e-300 || k_norm <= 1e-300) {
        throw UndefinedAlignmentError(
            "kernel_target_alignment: zero labels or zero kernel");
    }
    return y.dot(k.entries * y) / (k_norm * y_sq);
}

RVector task_model_alignment(const KernelMatrix& k_centered, const RVector& y_centered) {
    const Eigen::Index n = k_centered.n();
    if (n < 2) {
        throw std::invalid_argument("task_model_alignment: need n >= 2");
    }
    if (y_centered.size() != n) {
        throw std::invalid_argument("task_model_alignment: size mismatch");
    }
    if (y_centered.squaredNorm() <= 1e-300) {
        throw UndefinedAlignmentError("task_model_alignment: zero labels");
    }

    const RMatrix sym = 0.5 * (k_centered.entries + k_centered.entries.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("task_model_alignment: eigensolver failed");
    }
    // Coefficients against eigenvectors ordered by decreasing eigenvalue.
    const RVector coeffs = solver.eigenvectors().rowwise().reverse().transpose() * y_centered;
    const RVector squared = coeffs.array().square();
    const double total = squared.sum();
    RVector curve(n);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += squared(i);
        curve(i) = acc / total;
    }
    return curve;
}

}  // namespace qkl
