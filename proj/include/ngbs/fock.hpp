/**
 * Copyright 2026 The ngbs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Brute-force truncated Fock-space simulator used as the ground truth for the
// covariance/loop-Hafnian pipeline. It deliberately shares no code with
// gaussian.hpp or hafnian.hpp.

#include <vector>

#include "ngbs/core.hpp"
#include "ngbs/types.hpp"

namespace ngbs::fock {

// Single-mode operators on levels 0..cutoff, built by exponentiating the
// truncated generator. Unitary only on the low-photon sub-block.

/// exp(r/2 (a^2 - a^dagger^2)); Heisenberg action cosh r a - sinh r a^dagger.
CMatrix squeeze_matrix(double r, int cutoff);
/// exp(alpha a^dagger - conj(alpha) a)
CMatrix displace_matrix(Complex alpha, int cutoff);
/// exp(i phi n); Heisenberg action e^{i phi} a.
CMatrix phase_matrix(double phi, int cutoff);

/**
 * Photon-number-conserving two-mode operator stored as one dense block per
 * total-photon sector of the truncated (cutoff_i + 1) x (cutoff_j + 1) space.
 * Sectors with n <= min(cutoff_i, cutoff_j) are exact.
 */
class TwoModeOperator {
public:
    /// exp(theta (a_i^dagger a_j - a_i a_j^dagger)), cos^2 theta = t; Heisenberg
    /// action [[sqrt t, sqrt(1-t)], [-sqrt(1-t), sqrt t]].
    static TwoModeOperator beamsplitter(double t, int cutoff_i, int cutoff_j);

    int cutoff_i() const noexcept { return cutoff_i_; }
    int cutoff_j() const noexcept { return cutoff_j_; }
    /// Dense matrix on the product basis, index n_i * (cutoff_j + 1) + n_j.
    CMatrix dense() const;

private:
    friend class FockState;
    int cutoff_i_ = 0;
    int cutoff_j_ = 0;
    // sector n holds basis states (k, n - k) for k in [first_k[n], first_k[n] + size)
    std::vector<int> first_k_;
    std::vector<CMatrix> blocks_;
};

/// Dense (cutoff + 1)^2 beamsplitter matrix.
CMatrix beamsplitter_matrix(double t, int cutoff);

/// Dense amplitude tensor over modes with individual cutoffs; mode 0 is the
/// most significant index.
class FockState {
public:
    /// Vacuum.
    explicit FockState(std::vector<int> cutoffs);
    /// Tensor product of single-mode amplitude vectors (each of length cutoff + 1).
    static FockState product(const std::vector<std::vector<Complex>>& modes);

    int mode_count() const noexcept { return static_cast<int>(cutoffs_.size()); }
    int cutoff(int mode) const { return cutoffs_.at(mode); }
    const std::vector<Complex>& amplitudes() const noexcept { return amps_; }

    void apply(int mode, const CMatrix& op);
    void apply(int i, int j, const TwoModeOperator& op);
    /// Projects `mode` onto |n> and removes it (unnormalised).
    FockState project(int mode, int n) const;

    double norm_squared() const;
    Complex amplitude(const std::vector<int>& occupation) const;
    /// Probability weight with more than `level` photons in `mode`.
    double population_above(int mode, int level) const;

private:
    std::vector<int> cutoffs_;
    std::vector<std::size_t> stride_;
    std::vector<Complex> amps_;
};

inline constexpr int kMaxAutoCutoff = 240;

struct SourceResult {
    double herald_probability = 0.0;
    std::vector<Complex> system_state;  ///< normalised, levels 0..system_cutoff
    int system_cutoff = 0;
};

/// Cutoff that keeps the squeezed-vacuum tail above half the space below 1e-16.
int default_system_cutoff(const SourceSpec& spec);

/**
 * Runs the source circuit in Fock space, one herald mode at a time: each
 * herald is displaced, mixed with the system mode and projected onto |1>
 * before the next stage. cutoff <= 0 starts at default_system_cutoff and grows
 * it by half until the tail check passes (at most kMaxAutoCutoff). Throws
 * CutoffTooSmall if more than 1e-8 of the weight sits above cutoff / 2.
 */
SourceResult simulate_source(const SourceSpec& spec, int cutoff = 0);

/// A 2x2 unitary acting on interferometer modes (i, j).
struct MeshElement {
    int mode_i = 0;
    int mode_j = 0;
    Eigen::Matrix2cd unitary;
};

/// U = elements.back() ... elements.front() * diag(phases)
struct Mesh {
    std::vector<Complex> phases;
    std::vector<MeshElement> elements;  ///< in order of application
};

/// Triangular nulling of U by nearest-neighbour Givens rotations.
Mesh decompose_interferometer(const CMatrix& u);
CMatrix reconstruct(const Mesh& mesh);

/**
 * Conditional output distribution by state-vector evolution: heralded sources
 * from simulate_source, product input on the interferometer modes, mesh of
 * two-mode beamsplitters and phases, number-basis readout of every pattern
 * with total <= cutoff. Throws DimensionTooLarge above 1e7 amplitudes.
 */
Distribution simulate_experiment(const Experiment& exp, int cutoff);

}  // namespace ngbs::fock
