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

#include "qkl/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qkl/errors.hpp"

namespace qkl {

namespace {

bool is_power_of_two(Eigen::Index x) { return x > 0 && (x & (x - 1)) == 0; }

// Orthonormal Hermitian basis of 2^q x 2^q matrices: Pauli strings scaled
// by 2^{-q/2}. Representing the second-moment operator in this basis makes
// it a real symmetric matrix, so the numerical eigensolver directly yields
// Hermitian eigen-matrices, degenerate clusters included.
std::vector<CMatrix> pauli_basis(int num_qubits) {
    const Complex i{0.0, 1.0};
    const std::array<CMatrix, 4> single = {
        CMatrix{{1.0, 0.0}, {0.0, 1.0}},
        CMatrix{{0.0, 1.0}, {1.0, 0.0}},
        CMatrix{{0.0, -i}, {i, 0.0}},
        CMatrix{{1.0, 0.0}, {0.0, -1.0}},
    };
    const std::size_t count = std::size_t{1} << (2 * num_qubits);
    const double scale = std::pow(2.0, -0.5 * num_qubits);
    std::vector<CMatrix> basis;
    basis.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        CMatrix m = CMatrix::Identity(1, 1);
        for (int q = 0; q < num_qubits; ++q) {
            const std::size_t digit = (k >> (2 * (num_qubits - 1 - q))) & 3;
            m = kron(m, single[digit]);
        }
        basis.push_back(scale * m);
    }
    return basis;
}

}  // namespace

MeasureSpec MeasureSpec::uniform_box(double lo, double hi, int dim) {
    if (!(lo < hi) || dim < 1) {
        throw std::invalid_argument("MeasureSpec: need lo < hi and dim >= 1");
    }
    MeasureSpec m;
    m.kind = Kind::uniform_box;
    m.lo = lo;
    m.hi = hi;
    m.dim = dim;
    return m;
}

MeasureSpec MeasureSpec::point_mass(std::vector<double> x) {
    if (x.empty()) {
        throw std::invalid_argument("MeasureSpec: point mass needs a point");
    }
    MeasureSpec m;
    m.kind = Kind::point_mass;
    m.dim = static_cast<int>(x.size());
    m.point = std::move(x);
    return m;
}

MeasureSpec MeasureSpec::empirical(PointSet points) {
    if (points.empty()) {
        throw std::invalid_argument("MeasureSpec: empirical measure needs points");
    }
    MeasureSpec m;
    m.kind = Kind::empirical;
    m.dim = static_cast<int>(points.front().size());
    m.points = std::move(points);
    return m;
}

MeasureSpec& MeasureSpec::with_monte_carlo(int samples, std::uint64_t seed) {
    if (samples < 1) {
        throw std::invalid_argument("MeasureSpec: need at least one sample");
    }
    quadrature = Quadrature::monte_carlo;
    mc_samples = samples;
    mc_seed = seed;
    return *this;
}

MeasureSpec& MeasureSpec::with_gauss_legendre(int nodes_per_axis) {
    if (nodes_per_axis < 1) {
        throw std::invalid_argument("MeasureSpec: need at least one node");
    }
    if (dim > 2) {
        throw std::invalid_argument(
            "MeasureSpec: Gauss-Legendre quadrature is limited to dim <= 2");
    }
    quadrature = Quadrature::gauss_legendre;
    gl_nodes = nodes_per_axis;
    return *this;
}

void MeasureSpec::for_each_node(
    const std::function<void(std::span<const double>, double)>& fn) const {
    switch (kind) {
        case Kind::point_mass:
            fn(point, 1.0);
            return;
        case Kind::empirical: {
            const double w = 1.0 / static_cast<double>(points.size());
            for (const auto& p : points) {
                fn(p, w);
            }
            return;
        }
        case Kind::uniform_box:
            break;
    }

    if (quadrature == Quadrature::monte_carlo) {
        Rng rng(mc_seed);
        std::vector<double> x(dim);
        const double w = 1.0 / static_cast<double>(mc_samples);
        for (int s = 0; s < mc_samples; ++s) {
            for (int k = 0; k < dim; ++k) {
                x[k] = rng.uniform(lo, hi);
            }
            fn(x, w);
        }
        return;
    }

    if (dim > 2) {
        throw std::invalid_argument(
            "MeasureSpec: Gauss-Legendre quadrature is limited to dim <= 2");
    }
    const auto [nodes, weights] = gauss_legendre_rule(gl_nodes);
    std::vector<double> mapped(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        mapped[k] = lo + 0.5 * (nodes[k] + 1.0) * (hi - lo);
    }
    // Weights on [-1,1] sum to 2 per axis; halving normalizes the measure.
    if (dim == 1) {
        std::vector<double> x(1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            x[0] = mapped[k];
            fn(x, 0.5 * weights[k]);
        }
        return;
    }
    std::vector<double> x(2);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            x[0] = mapped[a];
            x[1] = mapped[b];
            fn(x, 0.25 * weights[a] * weights[b]);
        }
    }
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre_rule: n must be >= 1");
    }
    std::vector<double> x(n), w(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            p = 1.0;
            double prev = 0.0;
            for (int j = 0; j < n; ++j) {
                const double older = prev;
                prev = p;
                p = ((2.0 * j + 1.0) * xi * prev - j * older) / (j + 1.0);
            }
            dp = n * (xi * p - prev) / (xi * xi - 1.0);
            const double dx = p / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    return {x, w};
}

CVector vec(const CMatrix& m) {
    const Eigen::Index dim = m.rows();
    CVector v(dim * m.cols());
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

CMatrix unvec(const CVector& v) {
    const Eigen::Index dim = static_cast<Eigen::Index>(std::llround(
        std::sqrt(static_cast<double>(v.size()))));
    if (dim * dim != v.size()) {
        throw std::invalid_argument("unvec: length is not a perfect square");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            m(i, j) = v(i * dim + j);
        }
    }
    return m;
}

DensityMatrix mean_density(const FeatureMap& map, const MeasureSpec& measure) {
    if (measure.dim != map.num_qubits()) {
        throw std::invalid_argument("mean_density: measure dimension mismatch");
    }
    const Eigen::Index dim = Eigen::Index{1} << map.reduced_qubits();
    CMatrix acc = CMatrix::Zero(dim, dim);
    measure.for_each_node([&](std::span<const double> x, double w) {
        acc += w * map.embed(x).entries;
    });
    DensityMatrix out;
    out.num_qubits = map.reduced_qubits();
    out.entries = 0.5 * (acc + acc.adjoint());
    return out;
}

CMatrix second_moment_operator(const FeatureMap& map, const MeasureSpec& measure) {
    if (measure.dim != map.num_qubits()) {
        throw std::invalid_argument("second_moment_operator: measure dimension mismatch");
    }
    const int q = map.reduced_qubits();
    if (q > 5) {
        throw CapacityError("second_moment_operator: supports at most 5 effective qubits");
    }
    const Eigen::Index dim4 = Eigen::Index{1} << (2 * q);
    CMatrix acc = CMatrix::Zero(dim4, dim4);
    measure.for_each_node([&](std::span<const double> x, double w) {
        const CVector v = vec(map.embed(x).entries);
        acc.noalias() += w * (v * v.adjoint());
    });
    return 0.5 * (acc + acc.adjoint());
}

SpectralDecomposition operator_spectrum(const CMatrix& a_mu) {
    const Eigen::Index dim4 = a_mu.rows();
    if (a_mu.cols() != dim4 || !is_power_of_two(dim4)) {
        throw std::invalid_argument("operator_spectrum: matrix must be 4^q x 4^q");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(std::llround(
        std::sqrt(static_cast<double>(dim4))));
    if (dim * dim != dim4) {
        throw std::invalid_argument("operator_spectrum: matrix must be 4^q x 4^q");
    }
    const double scale = std::max(1.0, a_mu.cwiseAbs().maxCoeff());
    if ((a_mu - a_mu.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw std::invalid_argument("operator_spectrum: input is not Hermitian");
    }

    int q = 0;
    while ((Eigen::Index{1} << q) < dim) {
        ++q;
    }
    const std::vector<CMatrix> basis = pauli_basis(q);
    CMatrix p(dim4, dim4);
    for (Eigen::Index k = 0; k < dim4; ++k) {
        p.col(k) = vec(basis[static_cast<std::size_t>(k)]);
    }

    const CMatrix transformed = p.adjoint() * a_mu * p;
    if (transformed.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw std::invalid_argument(
            "operator_spectrum: operator does not preserve Hermitian matrices");
    }
    RMatrix real_form = transformed.real();
    real_form = 0.5 * (real_form + real_form.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<RMatrix> solver(real_form);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("operator_spectrum: eigensolver failed");
    }

    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
        if (std::abs(out.eigenvalues(i)) < 1e-12) {
            out.eigenvalues(i) = 0.0;
        }
    }
    out.eigen_matrices.reserve(static_cast<std::size_t>(dim4));
    for (Eigen::Index i = 0; i < dim4; ++i) {
        const RVector coords = solver.eigenvectors().col(dim4 - 1 - i);
        const CVector v = p * coords.cast<Complex>();
        CMatrix m = unvec(v);
        out.eigen_matrices.push_back(0.5 * (m + m.adjoint()));
    }
    out.trace_normalized = std::abs(out.eigenvalues.sum() - 1.0) <= 1e-6;
    return out;
}

double eigenfunction_eval(const Observable& a, std::span<const double> x,
                          const FeatureMap& map) {
    const DensityMatrix emb = map.embed(x);
    if (a.dim() != emb.dim()) {
        throw std::invalid_argument("eigenfunction_eval: dimension mismatch");
    }
    return expectation(emb, a);
}

PurityBoundReport purity_bound_check(const FeatureMap& map, const MeasureSpec& measure,
                                     const SpectralDecomposition& gram_spec) {
    if (gram_spec.eigenvalues.size() == 0) {
        throw std::invalid_argument("purity_bound_check: empty spectrum");
    }
    PurityBoundReport report;
    report.gamma_max = gram_spec.eigenvalues(0);
    report.bound = std::sqrt(purity(mean_density(map, measure)));
    report.sampling_slack = 3.0 / std::sqrt(static_cast<double>(gram_spec.eigenvalues.size()));
    report.holds = report.gamma_max <= report.bound + report.sampling_slack;
    return report;
}

std::vector<std::pair<double, std::uint64_t>> product_spectrum(
    std::span<const double> single_factor_eigenvalues, int d) {
    if (d < 1) {
        throw std::invalid_argument("product_spectrum: d must be >= 1");
    }
    if (single_factor_eigenvalues.empty()) {
        throw std::invalid_argument("product_spectrum: need at least one eigenvalue");
    }

    auto merge = [](std::vector<std::pair<double, std::uint64_t>> items) {
        std::sort(items.begin(), items.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::pair<double, std::uint64_t>> merged;
        for (const auto& [value, mult] : items) {
            if (!merged.empty() &&
                std::abs(merged.back().first - value) <=
                    1e-12 * std::max(1.0, std::abs(merged.back().first))) {
                merged.back().second += mult;
            } else {
                merged.emplace_back(value, mult);
            }
        }
        return merged;
    };

    std::vector<std::pair<double, std::uint64_t>> spectrum{{1.0, 1}};
    for (int step = 0; step < d; ++step) {
        std::vector<std::pair<double, std::uint64_t>> next;
        next.reserve(spectrum.size() * single_factor_eigenvalues.size());
        for (const auto& [value, mult] : spectrum) {
            for (const double e : single_factor_eigenvalues) {
                next.emplace_back(value * e, mult);
            }
        }
        spectrum = merge(std::move(next));
    }
    return spectrum;
}

SpectralDecomposition gram_spectrum(const KernelMatrix& k) {
    const Eigen::Index n = k.n();
    if (n < 1) {
        throw std::invalid_argument("gram_spectrum: empty kernel matrix");
    }
    RMatrix sym = (0.5 / static_cast<double>(n)) * (k.entries + k.entries.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gram_spectrum: eigensolver failed");
    }
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    out.trace_normalized = std::abs(out.eigenvalues.sum() - 1.0) <= 1e-6;
    return out;
}

}  // namespace qkl
