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

#include "ngbs/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ngbs/fock.hpp"
#include "ngbs/sampling.hpp"
#include "ngbs/state_prep.hpp"

namespace ngbs::validation {

namespace {

CMatrix preset_dft(int n) {
    CMatrix u(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) u(j, k) = std::polar(norm, 2.0 * std::numbers::pi * ((j * k) % n) / n);
    }
    return u;
}

CMatrix preset_bs50() {
    CMatrix u(2, 2);
    const double h = std::sqrt(0.5);
    u << h, h, -h, h;
    return u;
}

OracleCase make_case(std::string name, const std::vector<prep::TargetState>& targets, double t, CMatrix u,
                     std::vector<int> wiring, int cutoff) {
    Experiment exp;
    for (const auto& target : targets) exp.sources.push_back(prep::source_for_target(target, 0.5, t));
    exp.interferometer = std::move(u);
    exp.wiring = std::move(wiring);
    exp.cutoff = cutoff;
    return {std::move(name), std::move(exp)};
}

}  // namespace

CMatrix random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    CMatrix z(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) z(i, j) = Complex(normal(gen), normal(gen));
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

std::vector<OracleCase> standard_oracle_suite() {
    using prep::TargetState;
    const TargetState one = TargetState::single_photon();
    const TargetState two = TargetState::fock(2);
    const TargetState three = TargetState::fock(3);
    const TargetState zero_two = TargetState::from_amplitudes({1.0, 0.0, 1.0});
    const TargetState cat = TargetState::even_cat(Complex(1.0, 0.0), 2);
    const CMatrix id1 = CMatrix::Identity(1, 1);

    std::vector<OracleCase> suite;
    suite.push_back(make_case("single |1>, t=0.9", {one}, 0.9, id1, {0}, 6));
    suite.push_back(make_case("single |2>, t=0.99", {two}, 0.99, id1, {0}, 6));
    suite.push_back(make_case("single |3>, t=0.999", {three}, 0.999, id1, {0}, 6));
    suite.push_back(make_case("|1> into dft2, t=0.99", {one}, 0.99, preset_dft(2), {0}, 5));
    suite.push_back(make_case("|0>+|2> into bs50, t=0.9", {zero_two}, 0.9, preset_bs50(), {0}, 5));
    suite.push_back(make_case("|3> into dft2, t=0.9", {three}, 0.9, preset_dft(2), {1}, 6));
    suite.push_back(make_case("|2> into dft3, t=0.999", {two}, 0.999, preset_dft(3), {0}, 4));
    suite.push_back(make_case("cat into random3, t=0.99", {cat}, 0.99, random_unitary(3, 11), {1}, 4));
    suite.push_back(make_case("HOM, t=0.999", {one, one}, 0.999, preset_bs50(), {0, 1}, 4));
    suite.push_back(make_case("HOM, t=0.9", {one, one}, 0.9, preset_bs50(), {0, 1}, 4));
    suite.push_back(make_case("|1>,|2> into dft2, t=0.99", {one, two}, 0.99, preset_dft(2), {0, 1}, 4));
    suite.push_back(make_case("|1>,|1> into dft3, t=0.99", {one, one}, 0.99, preset_dft(3), {0, 2}, 4));
    suite.push_back(make_case("|2>,|0>+|2> into random3, t=0.9", {two, zero_two}, 0.9, random_unitary(3, 7), {2, 0}, 4));
    suite.push_back(make_case("|3>,|1> into bs50, t=0.999", {three, one}, 0.999, preset_bs50(), {0, 1}, 5));
    return suite;
}

OracleComparison compare_with_oracle(const Experiment& exp) {
    OracleComparison out;
    out.pipeline = sampling::full_distribution(exp);
    out.oracle = fock::simulate_experiment(exp, std::max(exp.cutoff, 1));
    if (exp.cutoff == 0) {
        // the oracle needs one level above vacuum; keep the common pattern set
        out.oracle.patterns.resize(1);
        out.oracle.probabilities.resize(1);
        out.oracle.tail_mass = 1.0 - out.oracle.total();
    }
    out.total_variation = total_variation(out.pipeline, out.oracle);
    for (std::size_t i = 0; i < out.pipeline.size(); ++i) {
        out.max_abs_diff = std::max(out.max_abs_diff, std::abs(out.pipeline.probabilities[i] - out.oracle.probabilities[i]));
    }
    return out;
}

hafnian::MatchingInstance random_instance(int n, std::uint64_t seed, bool loops) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = Complex(normal(gen), normal(gen));
    }
    CVector f = CVector::Zero(n);
    if (loops) {
        for (int i = 0; i < n; ++i) f(i) = Complex(normal(gen), normal(gen));
    }
    return {std::move(a), std::move(f)};
}

hafnian::MatchingInstance random_low_rank_instance(int n, int rank, std::uint64_t seed, bool loops) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    CMatrix g(n, rank);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < rank; ++k) g(i, k) = Complex(normal(gen), normal(gen)) * std::sqrt(0.5);
    }
    CVector f = CVector::Zero(n);
    if (loops) {
        for (int i = 0; i < n; ++i) f(i) = Complex(normal(gen), normal(gen)) * std::sqrt(0.5);
    }
    CMatrix a = g * g.transpose();
    return {std::move(a), std::move(f)};
}

RankTiming time_rank_instance(int n, int rank, int trials, std::uint64_t seed, bool loops) {
    using clock = std::chrono::steady_clock;
    const auto inst = random_low_rank_instance(n, rank, seed, loops);
    RankTiming row;
    row.n = n;
    row.rank = rank;
    row.enumeration_seconds = row.low_rank_seconds = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < std::max(trials, 1); ++trial) {
        auto t0 = clock::now();
        row.enumeration_value = hafnian::loop_hafnian(inst);
        auto t1 = clock::now();
        const auto factor = hafnian::factorize_low_rank(inst);
        row.low_rank_value = hafnian::loop_hafnian_low_rank(factor);
        auto t2 = clock::now();
        row.enumeration_seconds = std::min(row.enumeration_seconds, std::chrono::duration<double>(t1 - t0).count());
        row.low_rank_seconds = std::min(row.low_rank_seconds, std::chrono::duration<double>(t2 - t1).count());
    }
    const double diff = std::abs(row.low_rank_value - row.enumeration_value);
    const double ref = std::abs(row.enumeration_value);
    row.residual = ref > 0.0 ? diff / ref : diff;
    return row;
}

}  // namespace ngbs::validation
