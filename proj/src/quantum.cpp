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

#include "qkl/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qkl {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_targets(int num_qubits, const CMatrix& gate, std::span<const int> targets) {
    if (targets.empty()) {
        throw std::invalid_argument("apply_gate: no target qubits");
    }
    const Eigen::Index expected = Eigen::Index{1} << targets.size();
    if (gate.rows() != expected || gate.cols() != expected) {
        throw std::invalid_argument("apply_gate: gate dimension does not match target count");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= num_qubits) {
            throw std::invalid_argument("apply_gate: target qubit out of range");
        }
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("apply_gate: duplicate target qubit");
            }
        }
    }
}

// Bit masks that scatter reduced indices back into full indices, for a
// sorted list of qubit positions (qubit 0 = most significant bit).
std::vector<std::uint64_t> scatter_table(int num_qubits, const std::vector<int>& qubits) {
    const std::size_t count = std::size_t{1} << qubits.size();
    std::vector<std::uint64_t> table(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::uint64_t full = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            const std::uint64_t bit = (idx >> (qubits.size() - 1 - j)) & 1ULL;
            full |= bit << (num_qubits - 1 - qubits[j]);
        }
        table[idx] = full;
    }
    return table;
}

std::vector<int> sorted_keep(int num_qubits, std::span<const int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set must be nonempty");
    }
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.front() < 0 || kept.back() >= num_qubits) {
        throw std::invalid_argument("partial_trace: qubit index out of range");
    }
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("partial_trace: duplicate qubit index");
    }
    return kept;
}

std::vector<int> complement(int num_qubits, const std::vector<int>& kept) {
    std::vector<int> traced;
    traced.reserve(num_qubits - kept.size());
    std::size_t k = 0;
    for (int q = 0; q < num_qubits; ++q) {
        if (k < kept.size() && kept[k] == q) {
            ++k;
        } else {
            traced.push_back(q);
        }
    }
    return traced;
}

}  // namespace

Statevector Statevector::zero(int num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("Statevector: num_qubits must be >= 1");
    }
    Statevector psi;
    psi.num_qubits = num_qubits;
    psi.amplitudes = CVector::Zero(Eigen::Index{1} << num_qubits);
    psi.amplitudes(0) = 1.0;
    return psi;
}

void Statevector::check() const {
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
        throw std::invalid_argument("Statevector: amplitude count is not 2^num_qubits");
    }
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-10) {
        throw std::invalid_argument("Statevector: norm deviates from 1");
    }
}

DensityMatrix DensityMatrix::from_state(const Statevector& psi) {
    DensityMatrix dm;
    dm.num_qubits = psi.num_qubits;
    dm.entries = psi.amplitudes * psi.amplitudes.adjoint();
    return dm;
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    DensityMatrix dm;
    dm.num_qubits = num_qubits;
    dm.entries = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    return dm;
}

void DensityMatrix::check(double psd_tol) const {
    if (entries.rows() != entries.cols() ||
        entries.rows() != (Eigen::Index{1} << num_qubits)) {
        throw std::invalid_argument("DensityMatrix: shape is not 2^q x 2^q");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(entries.trace() - Complex{1.0, 0.0}) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -psd_tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

Observable Observable::sigma_x() {
    Observable obs;
    obs.num_qubits = 1;
    obs.entries = CMatrix{{0.0, 1.0}, {1.0, 0.0}};
    return obs;
}

Observable Observable::sigma_y() {
    Observable obs;
    obs.num_qubits = 1;
    obs.entries = CMatrix{{0.0, -kI}, {kI, 0.0}};
    return obs;
}

Observable Observable::sigma_z() {
    Observable obs;
    obs.num_qubits = 1;
    obs.entries = CMatrix{{1.0, 0.0}, {0.0, -1.0}};
    return obs;
}

Observable Observable::identity(int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Observable obs;
    obs.num_qubits = num_qubits;
    obs.entries = CMatrix::Identity(dim, dim);
    return obs;
}

void Observable::check() const {
    if (entries.rows() != entries.cols()) {
        throw std::invalid_argument("Observable: matrix is not square");
    }
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("Observable: not Hermitian");
    }
}

CMatrix rx_gate(double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("rx_gate: angle must be finite");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    CMatrix gate(2, 2);
    gate << c, -kI * s, -kI * s, c;
    return gate;
}

CMatrix ry_gate(double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("ry_gate: angle must be finite");
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    CMatrix gate(2, 2);
    gate << c, -s, s, c;
    return gate;
}

CMatrix rz_gate(double angle) {
    if (!std::isfinite(angle)) {
        throw std::invalid_argument("rz_gate: angle must be finite");
    }
    CMatrix gate = CMatrix::Zero(2, 2);
    gate(0, 0) = std::exp(-kI * (angle / 2.0));
    gate(1, 1) = std::exp(kI * (angle / 2.0));
    return gate;
}

CMatrix cnot_gate() {
    CMatrix gate = CMatrix::Zero(4, 4);
    gate(0, 0) = 1.0;
    gate(1, 1) = 1.0;
    gate(2, 3) = 1.0;
    gate(3, 2) = 1.0;
    return gate;
}

void apply_gate_in_place(CVector& amplitudes, int num_qubits, const CMatrix& gate,
                         std::span<const int> targets) {
    check_targets(num_qubits, gate, targets);
    const std::size_t k = targets.size();
    const std::size_t gdim = std::size_t{1} << k;
    const std::uint64_t total = std::uint64_t{1} << num_qubits;

    std::uint64_t mask = 0;
    std::vector<std::uint64_t> offset(gdim, 0);
    for (std::size_t t = 0; t < k; ++t) {
        const std::uint64_t stride = std::uint64_t{1} << (num_qubits - 1 - targets[t]);
        mask |= stride;
        for (std::size_t g = 0; g < gdim; ++g) {
            if ((g >> (k - 1 - t)) & 1ULL) {
                offset[g] |= stride;
            }
        }
    }

    std::vector<Complex> scratch(gdim);
    for (std::uint64_t base = 0; base < total; ++base) {
        if (base & mask) {
            continue;
        }
        for (std::size_t g = 0; g < gdim; ++g) {
            scratch[g] = amplitudes(static_cast<Eigen::Index>(base | offset[g]));
        }
        for (std::size_t g = 0; g < gdim; ++g) {
            Complex acc{0.0, 0.0};
            for (std::size_t h = 0; h < gdim; ++h) {
                acc += gate(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(h)) *
                       scratch[h];
            }
            amplitudes(static_cast<Eigen::Index>(base | offset[g])) = acc;
        }
    }
}

Statevector apply_gate(const Statevector& state, const CMatrix& gate,
                       std::span<const int> targets) {
    Statevector out = state;
    apply_gate_in_place(out.amplitudes, state.num_qubits, gate, targets);
    return out;
}

void apply_gate_columns(CMatrix& unitary, int num_qubits, const CMatrix& gate,
                        std::span<const int> targets) {
    CVector column(unitary.rows());
    for (Eigen::Index j = 0; j < unitary.cols(); ++j) {
        column = unitary.col(j);
        apply_gate_in_place(column, num_qubits, gate, targets);
        unitary.col(j) = column;
    }
}

CMatrix haar_random_unitary(Eigen::Index dim, Rng& rng) {
    if (dim < 1) {
        throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
    }
    CMatrix ginibre(dim, dim);
    const double scale = 1.0 / std::numbers::sqrt2;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            ginibre(i, j) = Complex{rng.normal(), rng.normal()} * scale;
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(ginibre);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    const CMatrix& packed = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex r = packed(j, j);
        const double mag = std::abs(r);
        q.col(j) *= (mag > 0.0) ? r / mag : Complex{1.0, 0.0};
    }
    return q;
}

CMatrix random_layers_unitary(int num_qubits, int num_layers, Rng& rng) {
    if (num_qubits < 1) {
        throw std::invalid_argument("random_layers_unitary: num_qubits must be >= 1");
    }
    if (num_layers < 0) {
        throw std::invalid_argument("random_layers_unitary: num_layers must be >= 0");
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    CMatrix u = CMatrix::Identity(dim, dim);
    for (int layer = 0; layer < num_layers; ++layer) {
        const std::uint64_t axis = rng.uniform_int(3);
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const int qubit = static_cast<int>(rng.uniform_int(num_qubits));
        const CMatrix rotation =
            axis == 0 ? rx_gate(angle) : (axis == 1 ? ry_gate(angle) : rz_gate(angle));
        const int rot_target[1] = {qubit};
        apply_gate_columns(u, num_qubits, rotation, rot_target);
        if (num_qubits > 1) {
            const int control = static_cast<int>(rng.uniform_int(num_qubits));
            int target = static_cast<int>(rng.uniform_int(num_qubits - 1));
            if (target >= control) {
                ++target;
            }
            const int pair[2] = {control, target};
            apply_gate_columns(u, num_qubits, cnot_gate(), pair);
        }
    }
    return u;
}

double unitarity_deviation(const CMatrix& u) {
    const CMatrix defect = u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(defect, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep) {
    const std::vector<int> kept = sorted_keep(dm.num_qubits, keep);
    const std::vector<int> traced = complement(dm.num_qubits, kept);
    const auto kept_scatter = scatter_table(dm.num_qubits, kept);
    const auto traced_scatter = scatter_table(dm.num_qubits, traced);

    const Eigen::Index rdim = Eigen::Index{1} << kept.size();
    CMatrix reduced = CMatrix::Zero(rdim, rdim);
    for (const std::uint64_t tr : traced_scatter) {
        for (Eigen::Index a = 0; a < rdim; ++a) {
            const Eigen::Index row = static_cast<Eigen::Index>(kept_scatter[a] | tr);
            for (Eigen::Index b = 0; b < rdim; ++b) {
                const Eigen::Index col = static_cast<Eigen::Index>(kept_scatter[b] | tr);
                reduced(a, b) += dm.entries(row, col);
            }
        }
    }
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();

    DensityMatrix out;
    out.num_qubits = static_cast<int>(kept.size());
    out.entries = std::move(reduced);
    return out;
}

CMatrix reduced_from_state(const Statevector& psi, std::span<const int> keep) {
    const std::vector<int> kept = sorted_keep(psi.num_qubits, keep);
    const std::vector<int> traced = complement(psi.num_qubits, kept);
    const auto kept_scatter = scatter_table(psi.num_qubits, kept);
    const auto traced_scatter = scatter_table(psi.num_qubits, traced);

    const Eigen::Index rdim = Eigen::Index{1} << kept.size();
    CMatrix reduced = CMatrix::Zero(rdim, rdim);
    CVector slice(rdim);
    for (const std::uint64_t tr : traced_scatter) {
        for (Eigen::Index a = 0; a < rdim; ++a) {
            slice(a) = psi.amplitudes(static_cast<Eigen::Index>(kept_scatter[a] | tr));
        }
        reduced.noalias() += slice * slice.adjoint();
    }
    return 0.5 * (reduced + reduced.adjoint());
}

double purity(const DensityMatrix& dm) {
    // Tr[rho^2] as a pairwise sum with the transpose; exact even if the
    // input carries residual asymmetry.
    return (dm.entries.array() * dm.entries.transpose().array()).sum().real();
}

double hs_inner(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return (a.entries.array() * b.entries.transpose().array()).sum().real();
}

double expectation(const DensityMatrix& dm, const Observable& obs) {
    if (dm.dim() != obs.dim()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    obs.check();
    return (dm.entries.array() * obs.entries.transpose().array()).sum().real();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qkl
