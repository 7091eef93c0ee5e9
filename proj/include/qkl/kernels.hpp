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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkl/quantum.hpp"

namespace qkl {

enum class Entangler { none, haar, layers };

struct FeatureMapConfig {
    int num_qubits = 1;
    Entangler entangler = Entangler::none;
    std::uint64_t seed = 0;  // drives haar / layers sampling
    int depth = 0;           // layers only; <= 0 means num_qubits^2
    std::optional<std::vector<int>> projection;  // kept qubits, else full state
};

/// A feature-map configuration with its entangling unitary materialized.
/// The unitary is sampled once from the config seed, so two maps built from
/// the same config are identical.
class FeatureMap {
  public:
    explicit FeatureMap(FeatureMapConfig cfg);

    const FeatureMapConfig& config() const { return cfg_; }
    int num_qubits() const { return cfg_.num_qubits; }
    bool projected() const { return cfg_.projection.has_value(); }

    /// Qubit count of the embedding actually returned by embed().
    int reduced_qubits() const;

    /// V * (R_X(x_0) x ... x R_X(x_{d-1})) |0...0>.
    Statevector state(std::span<const double> x) const;

    /// Density matrix of state(x), reduced to the projection when set.
    DensityMatrix embed(std::span<const double> x) const;

    /// Reduced density matrix on an explicit keep set (pure-state fast path).
    CMatrix reduced(std::span<const double> x, std::span<const int> keep) const;

  private:
    FeatureMapConfig cfg_;
    std::shared_ptr<const CMatrix> entangler_;  // null for Entangler::none
};

enum class KernelKind { full, biased, biased_wrong, rbf };

std::string kernel_tag(KernelKind kind);
KernelKind kernel_from_tag(const std::string& tag);

/// Symmetric Gram matrix with provenance.
struct KernelMatrix {
    RMatrix entries;
    KernelKind kind = KernelKind::full;
    bool centered = false;

    Eigen::Index n() const { return entries.rows(); }
};

/// prod_i cos^2((x_i - y_i)/2); the closed form of the full quantum kernel.
double cosine_kernel(std::span<const double> x, std::span<const double> y);

/// exp(-|x - y|^2 / 2), unit bandwidth.
double rbf_kernel(std::span<const double> x, std::span<const double> y);

/// Tr[rho(x) rho(y)] for the (possibly projected) embedding of `map`.
double kernel_value(std::span<const double> x, std::span<const double> y,
                    const FeatureMap& map);

/// Mean of `shots` Bernoulli draws with success probability
/// kernel_value(x, y); requires an unprojected map.
double shot_estimate(std::span<const double> x, std::span<const double> y,
                     const FeatureMap& map, long shots, Rng& rng);

using PointSet = std::vector<std::vector<double>>;

/// Gram matrix over `points`. Quantum kinds simulate each point once and
/// reuse the cached embedding for all pairs: biased keeps the map's
/// projection (default qubit 0), biased_wrong keeps qubit 1.
KernelMatrix gram(const PointSet& points, KernelKind kind, const FeatureMap& map);

/// Rectangular kernel block K[i,j] = k(rows[i], cols[j]).
RMatrix cross_gram(const PointSet& rows, const PointSet& cols, KernelKind kind,
                   const FeatureMap& map);

/// Doubly-centered Gram matrix (id - 11^T/n) K (id - 11^T/n).
KernelMatrix center_gram(const KernelMatrix& k);

}  // namespace qkl
