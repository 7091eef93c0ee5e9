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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qkl/errors.hpp"
#include "qkl/parallel.hpp"

using namespace qkl;

namespace {

constexpr double kPi = std::numbers::pi;

FeatureMap plain_map(int d) {
    FeatureMapConfig cfg;
    cfg.num_qubits = d;
    return FeatureMap(cfg);
}

FeatureMap projected_haar_map(int d, std::uint64_t seed) {
    FeatureMapConfig cfg;
    cfg.num_qubits = d;
    cfg.entangler = Entangler::haar;
    cfg.seed = seed;
    cfg.projection = std::vector<int>{0};
    return FeatureMap(cfg);
}

// The closed-form second-moment operator of the one-qubit cosine embedding
// under the uniform measure.
CMatrix cosine_second_moment() {
    CMatrix a(4, 4);
    a << 3, 0, 0, 1,
         0, 1, -1, 0,
         0, -1, 1, 0,
         1, 0, 0, 3;
    return a / 8.0;
}

std::vector<double> random_point(int d, Rng& rng) {
    std::vector<double> x(d);
    for (auto& v : x) {
        v = rng.uniform(0.0, 2.0 * kPi);
    }
    return x;
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    // A 64-node rule is exact through degree 127; check low moments.
    const auto [nodes, weights] = gauss_legendre_rule(64);
    double mass = 0.0, second = 0.0, fourth = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        mass += weights[i];
        second += weights[i] * nodes[i] * nodes[i];
        fourth += weights[i] * std::pow(nodes[i], 4);
    }
    EXPECT_NEAR(mass, 2.0, 1e-13);
    EXPECT_NEAR(second, 2.0 / 3.0, 1e-13);
    EXPECT_NEAR(fourth, 2.0 / 5.0, 1e-13);
}

TEST(MeanDensity, PointMassIsTheEmbedding) {
    Rng rng(3);
    const FeatureMap map = plain_map(2);
    const auto x = random_point(2, rng);
    const MeasureSpec measure = MeasureSpec::point_mass(x);
    const DensityMatrix mean = mean_density(map, measure);
    EXPECT_LE((mean.entries - map.embed(x).entries).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MeanDensity, CosineEmbeddingIsMaximallyMixed) {
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);
    const DensityMatrix mean = mean_density(map, measure);
    EXPECT_LE((mean.entries - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(MeanDensity, MultiQubitCaseUnderMonteCarlo) {
    const int d = 3;
    const FeatureMap map = plain_map(d);
    MeasureSpec measure = MeasureSpec::uniform_box(0.0, 2.0 * kPi, d);
    measure.with_monte_carlo(4096, 11);
    const DensityMatrix mean = mean_density(map, measure);
    EXPECT_LE((mean.entries - CMatrix::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff(), 0.05);
    EXPECT_NO_THROW(mean.check(1e-6));
}

TEST(MeanDensity, RejectsDimensionMismatch) {
    const FeatureMap map = plain_map(2);
    const MeasureSpec measure = MeasureSpec::uniform_box(0.0, 1.0, 3);
    EXPECT_THROW(mean_density(map, measure), std::invalid_argument);
}

TEST(SecondMoment, PointMassGivesRankOne) {
    Rng rng(7);
    const FeatureMap map = plain_map(1);
    const auto x = random_point(1, rng);
    const CMatrix a = second_moment_operator(map, MeasureSpec::point_mass(x));
    const CVector v = vec(map.embed(x).entries);
    EXPECT_LE((a - v * v.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SecondMoment, CosineEmbeddingClosedForm) {
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);
    const CMatrix a = second_moment_operator(map, measure);
    EXPECT_LE((a - cosine_second_moment()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SecondMoment, TraceIsOneForPureEmbeddings) {
    const FeatureMap map = plain_map(2);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 2);
    measure.with_gauss_legendre(32);
    const CMatrix a = second_moment_operator(map, measure);
    EXPECT_NEAR(a.trace().real(), 1.0, 1e-10);
}

TEST(SecondMoment, CapacityGuard) {
    const FeatureMap map = plain_map(6);
    MeasureSpec measure = MeasureSpec::uniform_box(0.0, 2.0 * kPi, 6);
    measure.with_monte_carlo(4, 1);
    EXPECT_THROW(second_moment_operator(map, measure), CapacityError);
}

TEST(OperatorSpectrum, CosineEmbeddingEigenvalues) {
    const SpectralDecomposition spec = operator_spectrum(cosine_second_moment());
    ASSERT_EQ(spec.eigenvalues.size(), 4);
    EXPECT_NEAR(spec.eigenvalues(0), 0.5, 1e-6);
    EXPECT_NEAR(spec.eigenvalues(1), 0.25, 1e-6);
    EXPECT_NEAR(spec.eigenvalues(2), 0.25, 1e-6);
    EXPECT_NEAR(spec.eigenvalues(3), 0.0, 1e-6);
    EXPECT_TRUE(spec.trace_normalized);
}

TEST(OperatorSpectrum, PointMassIsRankOne) {
    Rng rng(13);
    const FeatureMap map = plain_map(1);
    const auto x = random_point(1, rng);
    const CMatrix a = second_moment_operator(map, MeasureSpec::point_mass(x));
    const SpectralDecomposition spec = operator_spectrum(a);
    EXPECT_NEAR(spec.eigenvalues(0), 1.0, 1e-10);
    for (Eigen::Index i = 1; i < 4; ++i) {
        EXPECT_NEAR(spec.eigenvalues(i), 0.0, 1e-10);
    }
}

TEST(OperatorSpectrum, TwoQubitProductEigenvalues) {
    const FeatureMap map = plain_map(2);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 2);
    measure.with_gauss_legendre(64);
    const CMatrix a = second_moment_operator(map, measure);
    const SpectralDecomposition spec = operator_spectrum(a);

    // 2^{-2-l} with multiplicity 2^l * C(2,l): 1/4 once, 1/8 x4, 1/16 x4, 0 x7.
    std::vector<double> expected{0.25};
    expected.insert(expected.end(), 4, 0.125);
    expected.insert(expected.end(), 4, 0.0625);
    expected.insert(expected.end(), 7, 0.0);
    ASSERT_EQ(spec.eigenvalues.size(), static_cast<Eigen::Index>(expected.size()));
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        EXPECT_NEAR(spec.eigenvalues(i), expected[static_cast<std::size_t>(i)], 1e-6);
    }
}

TEST(OperatorSpectrum, EigenMatricesAreHermitianOrthonormal) {
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);
    const CMatrix a = second_moment_operator(map, measure);
    const SpectralDecomposition spec = operator_spectrum(a);

    for (std::size_t i = 0; i < spec.eigen_matrices.size(); ++i) {
        const CMatrix& h = spec.eigen_matrices[i];
        EXPECT_LE((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
        for (std::size_t j = 0; j < spec.eigen_matrices.size(); ++j) {
            const double inner =
                (h.adjoint() * spec.eigen_matrices[j]).trace().real();
            EXPECT_NEAR(inner, i == j ? 1.0 : 0.0, 1e-8);
        }
    }

    // The decomposition reconstructs the operator.
    CMatrix rebuilt = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < spec.eigen_matrices.size(); ++i) {
        const CVector v = vec(spec.eigen_matrices[i]);
        rebuilt += spec.eigenvalues(static_cast<Eigen::Index>(i)) * (v * v.adjoint());
    }
    EXPECT_LE((a - rebuilt).norm(), 1e-6);
}

TEST(OperatorSpectrum, DegenerateClusterSpansCosineSinePlane) {
    // Individual vectors in the 1/4-cluster are basis-dependent; the
    // projector onto the cluster is not.
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);
    const SpectralDecomposition spec =
        operator_spectrum(second_moment_operator(map, measure));

    const CVector v1 = vec(spec.eigen_matrices[1]);
    const CVector v2 = vec(spec.eigen_matrices[2]);
    const CMatrix cluster = v1 * v1.adjoint() + v2 * v2.adjoint();

    const Complex im{0.0, 1.0};
    CMatrix sigma_z(2, 2), h3(2, 2);
    sigma_z << 1, 0, 0, -1;
    h3 << 0, im, -im, 0;
    const CVector w1 = vec(sigma_z) / std::numbers::sqrt2;
    const CVector w2 = vec(h3) / std::numbers::sqrt2;
    const CMatrix reference = w1 * w1.adjoint() + w2 * w2.adjoint();
    EXPECT_LE((cluster - reference).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(OperatorSpectrum, RejectsNonHermitianInput) {
    CMatrix bad = CMatrix::Zero(4, 4);
    bad(0, 1) = 1.0;
    EXPECT_THROW(operator_spectrum(bad), std::invalid_argument);
}

TEST(EigenfunctionEval, CosineEmbeddingClosedForms) {
    const FeatureMap map = plain_map(1);
    Observable h3;
    h3.num_qubits = 1;
    const Complex im{0.0, 1.0};
    h3.entries = CMatrix{{0.0, im}, {-im, 0.0}};

    for (int i = 0; i < 50; ++i) {
        const double x = -kPi + 2.0 * kPi * i / 49.0;
        const std::vector<double> point{x};
        EXPECT_NEAR(eigenfunction_eval(Observable::identity(1), point, map), 1.0, 1e-6);
        EXPECT_NEAR(eigenfunction_eval(Observable::sigma_z(), point, map), std::cos(x),
                    1e-6);
        EXPECT_NEAR(std::abs(eigenfunction_eval(h3, point, map)), std::abs(std::sin(x)),
                    1e-6);
    }
}

TEST(MercerReconstruction, CosineKernelOnGrid) {
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(-kPi, kPi, 1);
    measure.with_gauss_legendre(64);
    const SpectralDecomposition spec =
        operator_spectrum(second_moment_operator(map, measure));

    for (int gx = 0; gx < 20; ++gx) {
        for (int gy = 0; gy < 20; ++gy) {
            const double x = -kPi + 2.0 * kPi * gx / 19.0;
            const double y = -kPi + 2.0 * kPi * gy / 19.0;
            const std::vector<double> px{x}, py{y};
            double rebuilt = 0.0;
            for (std::size_t i = 0; i < spec.eigen_matrices.size(); ++i) {
                if (spec.eigenvalues(static_cast<Eigen::Index>(i)) <= 0.0) {
                    continue;
                }
                Observable obs;
                obs.num_qubits = 1;
                obs.entries = spec.eigen_matrices[i];
                rebuilt += eigenfunction_eval(obs, px, map) *
                           eigenfunction_eval(obs, py, map);
            }
            EXPECT_NEAR(rebuilt, cosine_kernel(px, py), 1e-6);
        }
    }
}

TEST(PurityBound, CosineEmbeddingHolds) {
    const FeatureMap map = plain_map(1);
    MeasureSpec measure = MeasureSpec::uniform_box(0.0, 2.0 * kPi, 1);
    measure.with_gauss_legendre(64);

    Rng rng(17);
    PointSet points;
    for (int i = 0; i < 100; ++i) {
        points.push_back(random_point(1, rng));
    }
    const SpectralDecomposition spec =
        gram_spectrum(gram(points, KernelKind::full, map));
    const PurityBoundReport report = purity_bound_check(map, measure, spec);
    EXPECT_NEAR(report.bound, std::sqrt(0.5), 1e-8);
    EXPECT_NEAR(report.gamma_max, 0.5, 0.15);
    EXPECT_TRUE(report.holds);
}

TEST(PurityBound, ConstantEmbeddingSaturates) {
    const FeatureMap map = plain_map(2);
    const std::vector<double> probe{0.4, 2.2};
    const MeasureSpec measure = MeasureSpec::point_mass(probe);

    KernelMatrix ones;
    ones.kind = KernelKind::full;
    ones.entries = RMatrix::Ones(20, 20);
    const PurityBoundReport report =
        purity_bound_check(map, measure, gram_spectrum(ones));
    EXPECT_NEAR(report.gamma_max, 1.0, 1e-10);
    EXPECT_NEAR(report.bound, 1.0, 1e-10);
    EXPECT_TRUE(report.holds);
}

TEST(PurityBound, SixQubitCosineEmbedding) {
    const int d = 6;
    const FeatureMap map = plain_map(d);
    MeasureSpec measure = MeasureSpec::uniform_box(0.0, 2.0 * kPi, d);
    measure.with_monte_carlo(4096, 23);

    Rng rng(29);
    PointSet points;
    for (int i = 0; i < 200; ++i) {
        points.push_back(random_point(d, rng));
    }
    const SpectralDecomposition spec =
        gram_spectrum(gram(points, KernelKind::full, map));
    const PurityBoundReport report = purity_bound_check(map, measure, spec);
    EXPECT_LE(report.gamma_max, std::sqrt(std::pow(2.0, -d)) + 3.0 / std::sqrt(200.0));
    EXPECT_TRUE(report.holds);
}

TEST(ProductSpectrum, SingleFactorIsIdentity) {
    const std::vector<double> eigs{0.5, 0.25, 0.25, 0.0};
    const auto spectrum = product_spectrum(eigs, 1);
    ASSERT_EQ(spectrum.size(), 3u);
    EXPECT_DOUBLE_EQ(spectrum[0].first, 0.5);
    EXPECT_EQ(spectrum[0].second, 1u);
    EXPECT_DOUBLE_EQ(spectrum[1].first, 0.25);
    EXPECT_EQ(spectrum[1].second, 2u);
    EXPECT_DOUBLE_EQ(spectrum[2].first, 0.0);
    EXPECT_EQ(spectrum[2].second, 1u);
}

TEST(ProductSpectrum, ThreeQubitDegeneracies) {
    const std::vector<double> eigs{0.5, 0.25, 0.25, 0.0};
    const auto spectrum = product_spectrum(eigs, 3);
    // 2^{-3-l} with multiplicity 2^l * C(3,l) for l = 0..3, plus zero.
    auto binom = [](int n, int k) {
        double b = 1.0;
        for (int i = 0; i < k; ++i) {
            b = b * (n - i) / (i + 1);
        }
        return static_cast<std::uint64_t>(std::llround(b));
    };
    std::size_t index = 0;
    for (int l = 0; l <= 3; ++l) {
        ASSERT_LT(index, spectrum.size());
        EXPECT_NEAR(spectrum[index].first, std::pow(2.0, -3 - l), 1e-15);
        EXPECT_EQ(spectrum[index].second, (std::uint64_t{1} << l) * binom(3, l));
        ++index;
    }
    EXPECT_DOUBLE_EQ(spectrum[index].first, 0.0);
}

TEST(ProductSpectrum, TotalMassIsPreserved) {
    const std::vector<double> eigs{0.5, 0.25, 0.25, 0.0};
    for (int d = 3; d <= 6; ++d) {
        const auto spectrum = product_spectrum(eigs, d);
        double total = 0.0;
        for (const auto& [value, mult] : spectrum) {
            total += value * static_cast<double>(mult);
        }
        EXPECT_NEAR(total, 1.0, 1e-12) << "d=" << d;
    }
}

TEST(GramSpectrum, IdentityMatrix) {
    KernelMatrix k;
    k.kind = KernelKind::rbf;
    k.entries = RMatrix::Identity(5, 5);
    const SpectralDecomposition spec = gram_spectrum(k);
    for (Eigen::Index i = 0; i < 5; ++i) {
        EXPECT_NEAR(spec.eigenvalues(i), 0.2, 1e-12);
    }
    EXPECT_TRUE(spec.trace_normalized);
}

TEST(GramSpectrum, RankOneKernel) {
    Rng rng(31);
    const int n = 50;
    RVector f(n);
    for (int i = 0; i < n; ++i) {
        f(i) = std::cos(rng.uniform(0.0, 2.0 * kPi));
    }
    KernelMatrix k;
    k.kind = KernelKind::rbf;
    k.entries = f * f.transpose();
    const SpectralDecomposition spec = gram_spectrum(k);
    EXPECT_NEAR(spec.eigenvalues(0), f.squaredNorm() / n, 1e-12);
    EXPECT_LE(std::abs(spec.eigenvalues(1)), 1e-12);
}

TEST(GramSpectrum, BiasedKernelSpectralShape) {
    Rng rng(37);
    const int d = 6, n = 100;
    const FeatureMap map = projected_haar_map(d, 41);
    PointSet points;
    for (int i = 0; i < n; ++i) {
        points.push_back(random_point(d, rng));
    }
    const SpectralDecomposition spec =
        gram_spectrum(gram(points, KernelKind::biased, map));
    EXPECT_NEAR(spec.eigenvalues(0), 0.5, 0.1);
    for (Eigen::Index i = 1; i < 4; ++i) {
        EXPECT_LE(spec.eigenvalues(i), std::pow(2.0, -d + 2));
    }
    for (Eigen::Index i = 4; i < spec.eigenvalues.size(); ++i) {
        EXPECT_LE(std::abs(spec.eigenvalues(i)), 1e-8);
    }
}

TEST(HaarAveragedOperator, MatchesTheoremPrediction) {
    // Averaging the biased second-moment operator over Haar draws should
    // show one eigenvalue near 1/2 and three near 2^{-1-d}.
    const int d = 6;
    const int num_unitaries = 250;
    std::vector<CMatrix> per_draw(num_unitaries);
    parallel_for(num_unitaries, [&](std::size_t v) {
        const FeatureMap map = projected_haar_map(d, derive_seed(4242, {17, v}));
        MeasureSpec measure = MeasureSpec::uniform_box(0.0, 2.0 * kPi, d);
        measure.with_monte_carlo(1024, derive_seed(4242, {18, v}));
        per_draw[v] = second_moment_operator(map, measure);
    });
    CMatrix mean = CMatrix::Zero(4, 4);
    for (const CMatrix& a : per_draw) {
        mean += a;
    }
    mean /= static_cast<double>(num_unitaries);

    const SpectralDecomposition spec = operator_spectrum(mean);
    EXPECT_NEAR(spec.eigenvalues(0), 0.5, 0.02);
    const double small = std::pow(2.0, -1 - d);
    for (Eigen::Index i = 1; i < 4; ++i) {
        EXPECT_GE(spec.eigenvalues(i), small / 2.0);
        EXPECT_LE(spec.eigenvalues(i), small * 2.0);
    }
}
