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
#include <vector>

#include "ngbs/core.hpp"
#include "ngbs/gaussian.hpp"
#include "ngbs/types.hpp"

namespace ngbs::sampling {

/// Below this per-source herald probability a conditional is undefined.
inline constexpr double kHeraldFloor = 1e-300;

/// Direct sum of the source states and vacuum, modes ordered as
/// [interferometer modes 0..M'-1, herald block of source 0, source 1, ...].
gaussian::GaussianState assemble(const Experiment& exp);
/// Interferometer on modes 0..M'-1, identity on heralds.
gaussian::GaussianState propagate(const gaussian::GaussianState& state, const Experiment& exp);

/**
 * @brief Everything about an experiment that does not depend on the pattern:
 * the output state, its A/F data and the per-source herald probabilities.
 *
 * Identical sources share one herald-probability evaluation.
 */
class PreparedExperiment {
public:
    explicit PreparedExperiment(Experiment exp);

    const Experiment& experiment() const noexcept { return exp_; }
    const gaussian::GaussianState& output_state() const noexcept { return state_; }
    const gaussian::AFPair& af() const noexcept { return af_; }
    const std::vector<double>& herald_probabilities() const noexcept { return herald_probs_; }
    /// sum_k log p_k
    double log_herald_weight() const noexcept { return log_weight_; }

    /// System pattern followed by one photon on every herald mode.
    PhotonPattern full_pattern(const PhotonPattern& system) const;

private:
    Experiment exp_;
    gaussian::GaussianState state_;
    gaussian::AFPair af_;
    std::vector<double> herald_probs_;
    double log_weight_ = 0.0;
};

/// Pr(pattern on the interferometer modes and 1 on every herald).
double joint_probability(const PreparedExperiment& prepared, const PhotonPattern& pattern);
double joint_probability(const Experiment& exp, const PhotonPattern& pattern);

/// joint / prod_k p_k. Throws HeraldImpossible if any p_k < kHeraldFloor.
double conditional_probability(const PreparedExperiment& prepared, const PhotonPattern& pattern);
double conditional_probability(const Experiment& exp, const PhotonPattern& pattern);

/// Same value from a single loop Hafnian: the herald weight is absorbed as
/// A -> c^2 A, F -> c F with c = (prod_k p_k)^{-1/N}, N = dim(A_s).
double conditional_probability_absorbed(const PreparedExperiment& prepared, const PhotonPattern& pattern);
double conditional_probability_absorbed(const Experiment& exp, const PhotonPattern& pattern);

enum class Execution { Serial, Parallel };

/// Conditional probabilities of every pattern with total <= cutoff, in
/// colexicographic order. The parallel path evaluates patterns concurrently
/// and returns exactly the serial result.
Distribution full_distribution(const PreparedExperiment& prepared, Execution exec = Execution::Parallel);
Distribution full_distribution(const Experiment& exp, Execution exec = Execution::Parallel);

/// Inverse-CDF draws over the enumerated patterns (renormalised to their
/// total mass); deterministic for a given seed.
std::vector<PhotonPattern> sample(const Distribution& dist, int count, std::uint64_t seed);
std::vector<PhotonPattern> sample(const Experiment& exp, int count, std::uint64_t seed);

}  // namespace ngbs::sampling
