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
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qkl/kernels.hpp"
#include "qkl/quantum.hpp"

namespace qkl {

/// Eigenvalues (non-increasing) plus eigen-objects: Hermitian matrices for
/// operator spectra, real vectors (matrix columns) for Gram spectra.
struct SpectralDecomposition {
    RVector eigenvalues;
    std::vector<CMatrix> eigen_matrices;  // operator spectra
    RMatrix eigenvectors;                 // gram spectra, one column per eigenvalue
    bool trace_normalized = false;        // sum of eigenvalues is 1 within 1e-6
};

/// Data distribution plus the quadrature used to integrate against it.
struct MeasureSpec {
    enum class Kind { uniform_box, point_mass, empirical };
    enum class Quadrature { monte_carlo, gauss_legendre };

    Kind kind = Kind::uniform_box;
    int dim = 1;
    double lo = 0.0, hi = 0.0;       // uniform_box
    std::vector<double> point;       // point_mass
    PointSet points;                 // empirical

    Quadrature quadrature = Quadrature::monte_carlo;
    int mc_samples = 4096;
    std::uint64_t mc_seed = 0;
    int gl_nodes = 64;

    static MeasureSpec uniform_box(double lo, double hi, int dim);
    static MeasureSpec point_mass(std::vector<double> x);
    static MeasureSpec empirical(PointSet points);

    MeasureSpec& with_monte_carlo(int samples, std::uint64_t seed);
    /// Tensor-product Gauss-Legendre; only supported for dim <= 2.
    MeasureSpec& with_gauss_legendre(int nodes_per_axis);

    /// Invokes fn(point, weight) for every quadrature node; weights sum to 1.
    void for_each_node(const std::function<void(std::span<const double>, double)>& fn) const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_rule(int n);

/// Row-major vectorization, Vec(M)[i*dim+j] = M(i,j), and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v);

/// Mean embedding rho_mu = integral of embed(y) over the measure.
DensityMatrix mean_density(const FeatureMap& map, const MeasureSpec& measure);

/// Second-moment operator A_mu = integral of Vec(rho(y)) Vec(rho(y))^dag.
/// Hermitian PSD of shape 4^q x 4^q; throws CapacityError for q > 5.
CMatrix second_moment_operator(const FeatureMap& map, const MeasureSpec& measure);

/// Eigendecomposition of a Hermitian-map matrix into real eigenvalues and
/// Hermitian eigen-matrices, orthonormal under the Hilbert-Schmidt inner
/// product. Magnitudes below 1e-12 are clipped to zero.
SpectralDecomposition operator_spectrum(const CMatrix& a_mu);

/// Tr[embed(x) * A].
double eigenfunction_eval(const Observable& a, std::span<const double> x,
                          const FeatureMap& map);

struct PurityBoundReport {
    double gamma_max = 0.0;
    double bound = 0.0;
    double sampling_slack = 0.0;  // 3/sqrt(n)
    bool holds = false;
};

/// Checks gamma_max(K/n) <= sqrt(Tr[rho_mu^2]) + 3/sqrt(n).
PurityBoundReport purity_bound_check(const FeatureMap& map, const MeasureSpec& measure,
                                     const SpectralDecomposition& gram_spec);

/// All d-fold products of the given single-factor eigenvalues with their
/// combinatorial multiplicities, merged and sorted non-increasing.
std::vector<std::pair<double, std::uint64_t>> product_spectrum(
    std::span<const double> single_factor_eigenvalues, int d);

/// Eigenvalues and eigenvectors of K/n, sorted non-increasing.
SpectralDecomposition gram_spectrum(const KernelMatrix& k);

}  // namespace qkl
