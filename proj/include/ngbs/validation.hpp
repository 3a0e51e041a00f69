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
#include <string>
#include <vector>

#include "ngbs/hafnian.hpp"
#include "ngbs/types.hpp"

namespace ngbs::validation {

struct OracleCase {
    std::string name;
    Experiment experiment;
};

struct OracleComparison {
    Distribution pipeline;
    Distribution oracle;
    double total_variation = 0.0;
    double max_abs_diff = 0.0;
};

/// Haar-like unitary from the QR factors of a seeded complex Gaussian matrix.
CMatrix random_unitary(int n, std::uint64_t seed);

/// Small experiments (K <= 2, M' <= 3, target degree <= 3, cutoff <= 6)
/// on which both evaluators are cheap.
std::vector<OracleCase> standard_oracle_suite();

/// Loop-Hafnian distribution against the Fock-space simulation at exp.cutoff.
OracleComparison compare_with_oracle(const Experiment& exp);

/// Random symmetric instance with complex Gaussian entries; f = 0 without loops.
hafnian::MatchingInstance random_instance(int n, std::uint64_t seed, bool loops = true);
/// A = g g^T with a random n x rank factor g.
hafnian::MatchingInstance random_low_rank_instance(int n, int rank, std::uint64_t seed, bool loops = true);

/// One row of the enumeration vs low-rank comparison; times are the best of
/// `trials` runs, in seconds.
struct RankTiming {
    int n = 0;
    int rank = 0;
    double enumeration_seconds = 0.0;
    double low_rank_seconds = 0.0;
    Complex enumeration_value;
    Complex low_rank_value;
    /// |low_rank - enumeration| / |enumeration|, or the absolute difference when
    /// the enumeration value is 0.
    double residual = 0.0;
};

RankTiming time_rank_instance(int n, int rank, int trials, std::uint64_t seed, bool loops = true);

}  // namespace ngbs::validation
