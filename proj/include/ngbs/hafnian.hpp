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

#include <cstdint>
#include <span>

#include "ngbs/core.hpp"
#include "ngbs/gaussian.hpp"
#include "ngbs/types.hpp"

namespace ngbs::hafnian {

inline constexpr int kDefaultMaxDimension = 20;

/// Symmetric A_s with loop weights F_s; dimension 0 is the empty instance.
struct MatchingInstance {
    CMatrix a_sub;
    CVector f_sub;

    Index size() const noexcept { return f_sub.size(); }
};

/// A_s = g g^T with g of shape N x R.
struct LowRankFactor {
    CMatrix g;
    CVector f_sub;

    Index size() const noexcept { return g.rows(); }
    Index rank() const noexcept { return g.cols(); }
};

/// For each mode j with n_j photons, n_j copies of row/column j and of M+j.
MatchingInstance submatrix_for_pattern(const gaussian::AFPair& af, const PhotonPattern& pattern);

// Reference matching enumeration. Odd dimension gives 0 for the hafnian.
// Throws DimensionTooLarge above max_dimension.
Complex hafnian(const CMatrix& a, int max_dimension = kDefaultMaxDimension);
Complex loop_hafnian(const MatchingInstance& inst, int max_dimension = kDefaultMaxDimension);

// OpenMP variants: the matching space is split on the first two pairing
// decisions and the partial sums are added in a fixed order, so the result
// does not depend on the thread count.
Complex hafnian_parallel(const CMatrix& a, int max_dimension = kDefaultMaxDimension);
Complex loop_hafnian_parallel(const MatchingInstance& inst, int max_dimension = kDefaultMaxDimension);

inline constexpr std::int64_t kDefaultMaxStates = std::int64_t{1} << 26;

/**
 * Loop Hafnian of the instance formed by repeating index idx[k] of (a, f)
 * multiplicity[k] times, evaluated with the matching recursion memoised over
 * the remaining multiplicities. Cost is the product of (multiplicity + 1)
 * times the number of distinct indices. Throws DimensionTooLarge when that
 * product exceeds max_states.
 */
Complex loop_hafnian_repeated(const CMatrix& a, const CVector& f, std::span<const Index> idx,
                              std::span<const int> multiplicity,
                              std::int64_t max_states = kDefaultMaxStates);

/// Same, over the (j, M+j) index pairs selected by a photon pattern.
Complex loop_hafnian_for_pattern(const gaussian::AFPair& af, const PhotonPattern& pattern,
                                 std::int64_t max_states = kDefaultMaxStates);

/**
 * (p^{-2K/N} A_s, p^{-K/N} F_s) with N the instance dimension, so that
 * loop_hafnian(result) == p^{-K} loop_hafnian(inst). The scale is formed in
 * the log domain for p < 1e-6. Throws InvalidP unless 0 < p <= 1.
 */
MatchingInstance scale_absorb(const MatchingInstance& inst, double p, int k);

/// Same scaling law for an arbitrary herald weight: c = exp(-log_weight / N).
double absorption_scale(double log_weight, Index dimension);

/// Rank-revealing symmetric (Takagi) factorisation; singular values below
/// rel_tol * sigma_max are dropped. Throws FactorMismatch if the residual
/// max|g g^T - A_s| exceeds check_tol.
LowRankFactor factorize_low_rank(const MatchingInstance& inst, double rel_tol = 1e-10,
                                 double check_tol = 1e-8);

/**
 * Loop Hafnian through the rank-R change of variables y = g^T x: expands
 * prod_j (f_j + sum_k g_jk y_k) over multi-indices of total degree <= N and
 * weights each monomial with only even exponents by prod_k (m_k - 1)!!.
 */
Complex loop_hafnian_low_rank(const LowRankFactor& factor);
/// Checks max|g g^T - A_s| <= check_tol first (FactorMismatch).
Complex loop_hafnian_low_rank(const MatchingInstance& inst, const LowRankFactor& factor,
                              double check_tol = 1e-8);

/// Number of monomials visited by the low-rank expansion.
std::int64_t low_rank_term_count(Index n, Index rank);

/**
 * Photon-counting probability: prefactor / n! * Lhaf(A_s, F_s).
 * Rejects an imaginary part above 1e-8 relative (ImaginaryResidual) unless
 * it contributes less than kProbabilityNoiseFloor to the probability; values
 * in [-1e-9, 0) are clamped to 0, anything lower is NegativeProbability.
 */
double probability(const gaussian::AFPair& af, const PhotonPattern& pattern);

/// Absolute probability below which an imaginary residual is treated as rounding noise.
inline constexpr double kProbabilityNoiseFloor = 1e-14;

/// The checks of probability() applied to an already evaluated Lhaf.
/// `lhaf_abs_bound` bounds the rounding scale (Lhaf of |A|, |F|).
double finalize_probability(Complex lhaf, double scale, double lhaf_abs_bound);

}  // namespace ngbs::hafnian
