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

#include <vector>

#include "ngbs/core.hpp"
#include "ngbs/gaussian.hpp"
#include "ngbs/types.hpp"

namespace ngbs::prep {

/**
 * @brief Truncated single-mode target state.
 *
 * Stores normalised Fock amplitudes psi_n of |n>. The creation-operator
 * coefficients c_n of sum c_n (a^dagger)^n |0> are psi_n / sqrt(n!).
 */
class TargetState {
public:
    /// Throws DegenerateTarget if every amplitude vanishes.
    static TargetState from_amplitudes(std::vector<Complex> amplitudes);
    static TargetState from_creation_coeffs(const std::vector<Complex>& coeffs);
    static TargetState fock(int n);
    static TargetState single_photon() { return fock(1); }
    /// |alpha> + |-alpha> truncated to photon numbers <= degree.
    static TargetState even_cat(Complex alpha, int degree);

    const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
    std::vector<Complex> creation_coeffs() const;
    /// Index of the last non-zero amplitude.
    int degree() const noexcept { return degree_; }

private:
    explicit TargetState(std::vector<Complex> amplitudes);

    std::vector<Complex> amps_;
    int degree_ = 0;
};

/// alpha_j with prod_j (x + alpha_j) = sum_n (c_n / c_N) x^n, sorted by
/// (real, imag). Roots from companion-matrix eigenvalues plus one Newton step.
std::vector<Complex> displacement_params(const TargetState& target);

/**
 * Displacements that make the squeeze / subtract / anti-squeeze circuit
 * produce `target`. The anti-squeezed subtraction acts as u = cosh r a -
 * sinh r a^dagger on vacuum, and (a^dagger)^n |0> expands in powers of u as
 * sum_k n! / (k! (n-2k)!) (coth r / 2)^k (-u / sinh r)^{n-2k} |0>; the
 * returned values are the negated roots of the target polynomial rewritten
 * in u. Requires r > 0 unless the target is vacuum.
 */
std::vector<Complex> circuit_displacements(const TargetState& target, double r);

/// SourceSpec{r, t, circuit_displacements(target, r)}.
SourceSpec source_for_target(const TargetState& target, double r, double t);

/// Coefficients (constant term first) of prod_j (x + alpha_j).
std::vector<Complex> polynomial_from_roots(const std::vector<Complex>& alphas);

/// Mode 0 is the system mode, modes 1..N the heralds, before any detection.
gaussian::GaussianState build_source(const SourceSpec& spec);

/// Probability of one photon in every herald mode; 1 for a source without heralds.
double herald_probability(const gaussian::GaussianState& source);

/// Normalised system amplitudes (levels 0..cutoff) after heralding, from the
/// Fock oracle. Throws CutoffTooSmall if the discarded weight exceeds 1e-6.
std::vector<Complex> heralded_state(const SourceSpec& spec, int cutoff);

/// |<target|heralded>|^2. cutoff <= 0 uses the untruncated oracle state;
/// otherwise the state from heralded_state(spec, cutoff).
double fidelity(const SourceSpec& spec, const TargetState& target, int cutoff = 0);

}  // namespace ngbs::prep
