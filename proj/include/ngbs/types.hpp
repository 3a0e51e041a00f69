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

// Plain data shared by the covariance pipeline and the Fock-space oracle.
// Nothing here may pull in covariance-matrix code.

#include <cstdint>
#include <string>
#include <vector>

#include "ngbs/core.hpp"

namespace ngbs {

/// Photon counts, one entry per measured mode.
struct PhotonPattern {
    std::vector<int> counts;

    PhotonPattern() = default;
    explicit PhotonPattern(std::vector<int> c);
    PhotonPattern(std::initializer_list<int> c) : PhotonPattern(std::vector<int>(c)) {}

    std::size_t size() const noexcept { return counts.size(); }
    int operator[](std::size_t i) const { return counts[i]; }
    int total() const noexcept;
    /// n_1! n_2! ... n_M!
    double factorial_product() const;
    std::string to_string() const;

    friend bool operator==(const PhotonPattern&, const PhotonPattern&) = default;
};

/// Every pattern over `modes` modes with total photon number <= cutoff,
/// in colexicographic order (first mode varies fastest).
std::vector<PhotonPattern> enumerate_patterns(int modes, int cutoff);

/**
 * One heralded source circuit: squeeze the system mode by r, then for each
 * alpha a beamsplitter of transmission t against a displaced-vacuum herald
 * mode, then squeeze by -r. Heralding one photon per herald mode applies
 * (a + alpha_j) to the system mode in the t -> 1 limit.
 */
struct SourceSpec {
    double r = 0.0;
    double t = 1.0;
    std::vector<Complex> alphas;

    int herald_count() const noexcept { return static_cast<int>(alphas.size()); }
    int mode_count() const noexcept { return herald_count() + 1; }
    void validate() const;
};

/// Coherent amplitude injected into herald mode j so that the click applies
/// (a + alpha) to the system mode: beta = -alpha sqrt((1 - t) / t).
Complex herald_amplitude(Complex alpha, double t);

/**
 * K sources feeding an M'-mode interferometer. Source k's system mode enters
 * interferometer mode wiring[k]; the remaining interferometer inputs are vacuum.
 */
struct Experiment {
    std::vector<SourceSpec> sources;
    CMatrix interferometer;
    std::vector<int> wiring;
    int cutoff = 0;

    int system_modes() const noexcept { return static_cast<int>(interferometer.rows()); }
    int herald_modes() const noexcept;
    int total_modes() const noexcept { return system_modes() + herald_modes(); }
    /// Throws WiringConflict / NonUnitary / InvalidArgument.
    void validate() const;
};

/// Probabilities over an enumerated pattern set; tail_mass = 1 - sum.
struct Distribution {
    std::vector<PhotonPattern> patterns;
    std::vector<double> probabilities;
    double tail_mass = 0.0;

    std::size_t size() const noexcept { return patterns.size(); }
    double total() const noexcept;
};

/// 1/2 sum |p - q| over the common pattern list; throws if the lists differ.
double total_variation(const Distribution& p, const Distribution& q);

}  // namespace ngbs
