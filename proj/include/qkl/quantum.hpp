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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qkl/rng.hpp"

namespace qkl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Qubit ordering convention: qubit 0 is the leftmost tensor factor, i.e. it
// owns the most significant bit of an amplitude index.

/// Pure state of num_qubits qubits; amplitudes have unit norm.
struct Statevector {
    int num_qubits = 0;
    CVector amplitudes;

    static Statevector zero(int num_qubits);

    Eigen::Index dim() const { return amplitudes.size(); }

    /// Throws std::invalid_argument unless the norm is 1 within 1e-10.
    void check() const;
};

/// Hermitian, PSD, unit-trace matrix on num_qubits qubits.
struct DensityMatrix {
    int num_qubits = 0;
    CMatrix entries;

    static DensityMatrix from_state(const Statevector& psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    Eigen::Index dim() const { return entries.rows(); }

    /// Throws std::invalid_argument unless Hermitian and unit trace within
    /// 1e-10 and the smallest eigenvalue is >= -psd_tol.
    void check(double psd_tol = 1e-8) const;
};

/// Hermitian operator measured on a state.
struct Observable {
    int num_qubits = 0;
    CMatrix entries;

    static Observable sigma_x();
    static Observable sigma_y();
    static Observable sigma_z();
    static Observable identity(int num_qubits);

    Eigen::Index dim() const { return entries.rows(); }

    void check() const;
};

// --- gates ---------------------------------------------------------------

/// exp(-i*angle/2 * sigma_x); throws on non-finite angle.
CMatrix rx_gate(double angle);
CMatrix ry_gate(double angle);
CMatrix rz_gate(double angle);

/// 4x4 CNOT; the first target slot is the control qubit.
CMatrix cnot_gate();

/// Applies `gate` (dim 2^|targets|) to the target qubits, identity elsewhere.
Statevector apply_gate(const Statevector& state, const CMatrix& gate,
                       std::span<const int> targets);

/// In-place variant working on a raw amplitude vector.
void apply_gate_in_place(CVector& amplitudes, int num_qubits, const CMatrix& gate,
                         std::span<const int> targets);

/// Applies the gate to every column of `unitary` (columns viewed as states).
void apply_gate_columns(CMatrix& unitary, int num_qubits, const CMatrix& gate,
                        std::span<const int> targets);

// --- random unitaries ----------------------------------------------------

/// Haar sample on U(dim): complex Ginibre -> QR, columns rescaled by the
/// phases of R's diagonal. Plain QR without the phase fix is biased.
CMatrix haar_random_unitary(Eigen::Index dim, Rng& rng);

/// Product of num_layers blocks, each a uniformly random single-qubit
/// rotation (axis in {X,Y,Z}, angle in [0,2pi)) on a random qubit followed
/// by a CNOT on a uniformly random ordered pair (skipped for one qubit).
/// Draw order per layer: axis, angle, qubit, control, target.
CMatrix random_layers_unitary(int num_qubits, int num_layers, Rng& rng);

/// Largest |eigenvalue| of U*U^dag - id (spectral-norm unitarity deviation).
double unitarity_deviation(const CMatrix& u);

// --- density-matrix algebra ----------------------------------------------

/// Reduced density matrix on the kept qubits (ascending original order).
/// The result is symmetrized to suppress float drift.
DensityMatrix partial_trace(const DensityMatrix& dm, std::span<const int> keep);

/// Reduced density matrix of a pure state, computed without forming the
/// full 2^d x 2^d matrix.
CMatrix reduced_from_state(const Statevector& psi, std::span<const int> keep);

/// Tr[dm^2].
double purity(const DensityMatrix& dm);

/// Tr[a*b] for equal-dimension density matrices.
double hs_inner(const DensityMatrix& a, const DensityMatrix& b);

/// Tr[dm*M] for a Hermitian observable.
double expectation(const DensityMatrix& dm, const Observable& obs);

/// Kronecker product, first factor on the most significant bits.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace qkl
