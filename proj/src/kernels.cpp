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

#include "qkl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkl/parallel.hpp"

namespace qkl {

namespace {

void check_point_dim(std::span<const double> x, int expected, const char* where) {
    if (static_cast<int>(x.size()) != expected) {
        throw std::invalid_argument(std::string(where) + ": input dimension mismatch");
    }
}

void check_point_set(const PointSet& points, int expected, const char* where) {
    if (points.empty()) {
        throw std::invalid_argument(std::string(where) + ": empty point set");
    }
    for (const auto& p : points) {
        check_point_dim(p, expected, where);
    }
}

double hs_product(const CMatrix& a, const CMatrix& b) {
    return (a.array() * b.transpose().array()).sum().real();
}

std::vector<int> projection_for(KernelKind kind, const FeatureMap& map) {
    switch (kind) {
        case KernelKind::biased:
            if (map.config().projection) {
                return *map.config().projection;
            }
            return {0};
        case KernelKind::biased_wrong:
            return {1};
        default:
            return {};
    }
}

}  // namespace

FeatureMap::FeatureMap(FeatureMapConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.num_qubits < 1) {
        throw std::invalid_argument("FeatureMap: num_qubits must be >= 1");
    }
    if (cfg_.projection) {
        const auto& proj = *cfg_.projection;
        if (proj.empty()) {
            throw std::invalid_argument("FeatureMap: projection must be nonempty");
        }
        std::vector<int> sorted = proj;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() < 0 || sorted.back() >= cfg_.num_qubits ||
            std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("FeatureMap: projection is not a subset of qubits");
        }
    }
    const Eigen::Index dim = Eigen::Index{1} << cfg_.num_qubits;
    switch (cfg_.entangler) {
        case Entangler::none:
            break;
        case Entangler::haar: {
            Rng rng(cfg_.seed);
            entangler_ = std::make_shared<const CMatrix>(haar_random_unitary(dim, rng));
            break;
        }
        case Entangler::layers: {
            Rng rng(cfg_.seed);
            const int depth =
                cfg_.depth > 0 ? cfg_.depth : cfg_.num_qubits * cfg_.num_qubits;
            entangler_ = std::make_shared<const CMatrix>(
                random_layers_unitary(cfg_.num_qubits, depth, rng));
            break;
        }
    }
}

int FeatureMap::reduced_qubits() const {
    return cfg_.projection ? static_cast<int>(cfg_.projection->size()) : cfg_.num_qubits;
}

Statevector FeatureMap::state(std::span<const double> x) const {
    check_point_dim(x, cfg_.num_qubits, "FeatureMap::state");
    Statevector psi = Statevector::zero(cfg_.num_qubits);
    for (int q = 0; q < cfg_.num_qubits; ++q) {
        const int target[1] = {q};
        apply_gate_in_place(psi.amplitudes, cfg_.num_qubits, rx_gate(x[q]), target);
    }
    if (entangler_) {
        psi.amplitudes = (*entangler_) * psi.amplitudes;
    }
    return psi;
}

DensityMatrix FeatureMap::embed(std::span<const double> x) const {
    const Statevector psi = state(x);
    if (!cfg_.projection) {
        return DensityMatrix::from_state(psi);
    }
    DensityMatrix dm;
    dm.num_qubits = static_cast<int>(cfg_.projection->size());
    dm.entries = reduced_from_state(psi, *cfg_.projection);
    return dm;
}

CMatrix FeatureMap::reduced(std::span<const double> x, std::span<const int> keep) const {
    return reduced_from_state(state(x), keep);
}

std::string kernel_tag(KernelKind kind) {
    switch (kind) {
        case KernelKind::full:
            return "k";
        case KernelKind::biased:
            return "q";
        case KernelKind::biased_wrong:
            return "qw";
        case KernelKind::rbf:
            return "rbf";
    }
    return "?";
}

KernelKind kernel_from_tag(const std::string& tag) {
    if (tag == "k") return KernelKind::full;
    if (tag == "q") return KernelKind::biased;
    if (tag == "qw") return KernelKind::biased_wrong;
    if (tag == "rbf") return KernelKind::rbf;
    throw std::invalid_argument("unknown kernel tag: " + tag);
}

double cosine_kernel(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw std::invalid_argument("cosine_kernel: length mismatch");
    }
    double value = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = std::cos((x[i] - y[i]) / 2.0);
        value *= c * c;
    }
    return value;
}

double rbf_kernel(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw std::invalid_argument("rbf_kernel: length mismatch");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sq += d * d;
    }
    return std::exp(-sq / 2.0);
}

double kernel_value(std::span<const double> x, std::span<const double> y,
                    const FeatureMap& map) {
    if (!map.projected()) {
        const Statevector a = map.state(x);
        const Statevector b = map.state(y);
        return std::norm(a.amplitudes.dot(b.amplitudes));
    }
    const DensityMatrix a = map.embed(x);
    const DensityMatrix b = map.embed(y);
    return hs_product(a.entries, b.entries);
}

double shot_estimate(std::span<const double> x, std::span<const double> y,
                     const FeatureMap& map, long shots, Rng& rng) {
    if (shots < 1) {
        throw std::invalid_argument("shot_estimate: shots must be >= 1");
    }
    if (map.projected()) {
        throw std::invalid_argument("shot_estimate: requires an unprojected map");
    }
    const double p = kernel_value(x, y, map);
    long hits = 0;
    for (long s = 0; s < shots; ++s) {
        if (rng.bernoulli(p)) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(shots);
}

KernelMatrix gram(const PointSet& points, KernelKind kind, const FeatureMap& map) {
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    KernelMatrix out;
    out.kind = kind;
    out.entries.resize(n, n);

    if (kind == KernelKind::rbf) {
        check_point_set(points, static_cast<int>(points.front().size()), "gram");
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = i; j < n; ++j) {
                const double v = rbf_kernel(points[i], points[j]);
                out.entries(i, j) = v;
                out.entries(j, i) = v;
            }
        }
        return out;
    }

    check_point_set(points, map.num_qubits(), "gram");
    if (kind == KernelKind::full) {
        std::vector<CVector> states(points.size());
        parallel_for(points.size(),
                     [&](std::size_t i) { states[i] = map.state(points[i]).amplitudes; });
        parallel_for(points.size(), [&](std::size_t i) {
            for (std::size_t j = i; j < points.size(); ++j) {
                const double v = std::norm(states[i].dot(states[j]));
                out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
                out.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
            }
        });
        return out;
    }

    const std::vector<int> keep = projection_for(kind, map);
    if (kind == KernelKind::biased_wrong && map.num_qubits() < 2) {
        throw std::invalid_argument("gram: the wrong-qubit kernel needs at least 2 qubits");
    }
    // n circuit simulations, n^2 cheap traces on the cached reduced matrices.
    std::vector<CMatrix> reduced(points.size());
    parallel_for(points.size(),
                 [&](std::size_t i) { reduced[i] = map.reduced(points[i], keep); });
    parallel_for(points.size(), [&](std::size_t i) {
        for (std::size_t j = i; j < points.size(); ++j) {
            const double v = hs_product(reduced[i], reduced[j]);
            out.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            out.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    });
    return out;
}

RMatrix cross_gram(const PointSet& rows, const PointSet& cols, KernelKind kind,
                   const FeatureMap& map) {
    RMatrix out(rows.size(), cols.size());
    if (kind == KernelKind::rbf) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < cols.size(); ++j) {
                out(i, j) = rbf_kernel(rows[i], cols[j]);
            }
        }
        return out;
    }
    check_point_set(rows, map.num_qubits(), "cross_gram");
    check_point_set(cols, map.num_qubits(), "cross_gram");
    if (kind == KernelKind::full) {
        std::vector<CVector> row_states(rows.size());
        std::vector<CVector> col_states(cols.size());
        parallel_for(rows.size(),
                     [&](std::size_t i) { row_states[i] = map.state(rows[i]).amplitudes; });
        parallel_for(cols.size(),
                     [&](std::size_t j) { col_states[j] = map.state(cols[j]).amplitudes; });
        parallel_for(rows.size(), [&](std::size_t i) {
            for (std::size_t j = 0; j < cols.size(); ++j) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    std::norm(row_states[i].dot(col_states[j]));
            }
        });
        return out;
    }
    const std::vector<int> keep = projection_for(kind, map);
    std::vector<CMatrix> row_reduced(rows.size());
    std::vector<CMatrix> col_reduced(cols.size());
    parallel_for(rows.size(),
                 [&](std::size_t i) { row_reduced[i] = map.reduced(rows[i], keep); });
    parallel_for(cols.size(),
                 [&](std::size_t j) { col_reduced[j] = map.reduced(cols[j], keep); });
    parallel_for(rows.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                hs_product(row_reduced[i], col_reduced[j]);
        }
    });
    return out;
}

KernelMatrix center_gram(const KernelMatrix& k) {
    const RVector row_means = k.entries.rowwise().mean();
    const double grand_mean = row_means.mean();
    KernelMatrix out;
    out.kind = k.kind;
    out.centered = true;
    out.entries = k.entries;
    out.entries.colwise() -= row_means;
    out.entries.rowwise() -= row_means.transpose();
    out.entries.array() += grand_mean;
    // Round-off from the rank-one updates breaks exact symmetry downstream.
    out.entries = 0.5 * (out.entries + out.entries.transpose()).eval();
    return out;
}

}  // namespace qkl
