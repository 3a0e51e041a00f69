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
#include <optional>
#include <string>
#include <vector>

#include "ngbs/core.hpp"
#include "ngbs/state_prep.hpp"
#include "ngbs/types.hpp"

namespace ngbs::config {

/// One entry of the "targets" list.
struct TargetEntry {
    /// "single_photon", "fock_n", "cat_even", or empty for explicit coefficients.
    std::string preset;
    int n = 0;
    Complex alpha{0.0, 0.0};
    int degree = 0;
    /// Explicit coefficients; |n> amplitudes unless `creation` is set.
    std::vector<Complex> coeffs;
    bool creation = false;
    std::optional<double> r;
    std::optional<double> t;

    prep::TargetState target() const;
};

struct InterferometerEntry {
    /// "identity", "dft", "bs50", or empty for an explicit matrix.
    std::string preset;
    int size = 0;
    CMatrix matrix;

    CMatrix unitary() const;
};

/**
 * @brief Parsed experiment document.
 *
 * Holds the document as written (presets stay presets) so that it can be
 * written back unchanged; experiment() resolves it.
 */
struct ExperimentConfig {
    std::vector<TargetEntry> targets;
    double r = 0.5;
    double t = 0.999;
    InterferometerEntry interferometer;
    std::vector<int> wiring;
    int cutoff = 4;
    std::uint64_t seed = 0;

    std::vector<prep::TargetState> target_states() const;
    std::vector<SourceSpec> sources() const;
    /// Throws ConfigError for anything that does not form a valid experiment.
    Experiment experiment() const;
};

/// Throws ConfigError with the offending key in the message.
ExperimentConfig parse(const std::string& text);
ExperimentConfig load(const std::string& path);
/// Canonical JSON; parse(to_text(c)) reproduces c.
std::string to_text(const ExperimentConfig& config);

}  // namespace ngbs::config
