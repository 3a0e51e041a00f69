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

#include <span>
#include <vector>

#include "ngbs/core.hpp"

namespace ngbs::gaussian {

/**
 * @brief Multimode Gaussian state in the complex (alpha, alpha*) ordering.
 *
 * sigma is 2M x 2M with block form [[C, S], [conj(S), conj(C)]], C Hermitian,
 * S symmetric; the vacuum has sigma = I/2. disp = [d_1..d_M, d_1*..d_M*].
 * Values are immutable; every operation returns a new state.
 */
class GaussianState {
public:
    /// Validates block structure and conjugate pairing to 1e-10.
    GaussianState(CMatrix sigma, CVector disp);

    static GaussianState vacuum(int modes);

    int mode_count() const noexcept { return static_cast<int>(disp_.size() / 2); }
    const CMatrix& sigma() const noexcept { return sigma_; }
    const CVector& disp() const noexcept { return disp_; }
    /// sigma + I/2
    CMatrix sigma_q() const;

private:
    struct Unchecked {};
    GaussianState(Unchecked, CMatrix sigma, CVector disp);

    CMatrix sigma_;
    CVector disp_;

    friend GaussianState transform(const GaussianState&, const CMatrix&);
    friend GaussianState displace(const GaussianState&, int, Complex);
    friend GaussianState reduce(const GaussianState&, std::span<const int>);
    friend GaussianState direct_sum(const GaussianState&, const GaussianState&);
    friend GaussianState permute_modes(const GaussianState&, std::span<const int>);
};

/// sigma -> W sigma W^dagger, disp -> W disp for a doubled 2M x 2M matrix W.
GaussianState transform(const GaussianState& state, const CMatrix& doubled);

/// Heisenberg block [[cosh r, -sinh r], [-sinh r, cosh r]] on (a_mode, a_mode^dagger).
GaussianState squeeze(const GaussianState& state, int mode, double r);
GaussianState displace(const GaussianState& state, int mode, Complex alpha);
/// Real beamsplitter [[sqrt t, sqrt(1-t)], [-sqrt(1-t), sqrt t]] on modes (i, j).
GaussianState beamsplitter(const GaussianState& state, int i, int j, double t);
/// Embeds U on `modes` (in order) and applies U (+) conj(U). Throws NonUnitary.
GaussianState apply_unitary(const GaussianState& state, const CMatrix& u, std::span<const int> modes);
/// Marginal on `keep`, in the given order.
GaussianState reduce(const GaussianState& state, std::span<const int> keep);
/// Modes of `a` first, then modes of `b`.
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);
/// New mode i is old mode order[i]; `order` must be a permutation.
GaussianState permute_modes(const GaussianState& state, std::span<const int> order);

/// det(2 sigma); equals 1 for pure states.
double purity_indicator(const GaussianState& state);

struct Prefactor {
    double det_sigma_q = 1.0;
    double exp_factor = 1.0;  ///< exp(-1/2 d^dagger sigma_Q^{-1} d)

    /// exp_factor / sqrt(det sigma_Q)
    double value() const;
};

/// Exponent data of the photon-counting generating function.
struct AFPair {
    CMatrix a_matrix;  ///< X (I - sigma_Q^{-1}), symmetrised
    CVector f_vector;  ///< (d^dagger sigma_Q^{-1})^T
    Prefactor prefactor;

    int mode_count() const noexcept { return static_cast<int>(f_vector.size() / 2); }
};

/// Throws SingularSigmaQ if sigma_Q is not positive definite or its
/// condition number exceeds 1e12.
AFPair build_af(const GaussianState& state);

}  // namespace ngbs::gaussian
