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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "ngbs/gaussian.hpp"
#include "ngbs/sampling.hpp"
#include "ngbs/state_prep.hpp"
#include "ngbs/validation.hpp"

using namespace ngbs;
using namespace ngbs::sampling;

namespace {

CMatrix bs50() {
    CMatrix u(2, 2);
    const double h = std::sqrt(0.5);
    u << h, h, -h, h;
    return u;
}

Experiment hom(double t) {
    Experiment exp;
    const auto spec = prep::source_for_target(prep::TargetState::single_photon(), 0.5, t);
    exp.sources = {spec, spec};
    exp.interferometer = bs50();
    exp.wiring = {0, 1};
    exp.cutoff = 4;
    return exp;
}

double probability_of(const Distribution& d, const PhotonPattern& p) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.patterns[i] == p) return d.probabilities[i];
    }
    FAIL("pattern not enumerated");
    return 0.0;
}

}  // namespace

TEST_CASE("assembly") {
    Experiment empty;
    empty.interferometer = CMatrix::Identity(2, 2);
    const auto vac = assemble(empty);
    CHECK((vac.sigma() - gaussian::GaussianState::vacuum(2).sigma()).norm() == 0.0);

    Experiment one;
    one.sources = {prep::source_for_target(prep::TargetState::fock(2), 0.5, 0.99)};
    one.interferometer = CMatrix::Identity(1, 1);
    one.wiring = {0};
    const auto src = prep::build_source(one.sources[0]);
    CHECK((assemble(one).sigma() - src.sigma()).norm() < 1e-15);
    CHECK((assemble(one).disp() - src.disp()).norm() < 1e-15);

    Experiment conflict = hom(0.99);
    conflict.wiring = {1, 1};
    try {
        (void)assemble(conflict);
        FAIL("expected WiringConflict");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WiringConflict);
    }
}

TEST_CASE("herald marginals are untouched by the interferometer") {
    Experiment exp = hom(0.99);
    exp.interferometer = validation::random_unitary(2, 3);
    const auto out = propagate(assemble(exp), exp);
    const std::vector<int> heralds{2, 3};
    const auto before = gaussian::reduce(assemble(exp), heralds);
    const auto after = gaussian::reduce(out, heralds);
    CHECK((before.sigma() - after.sigma()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((before.disp() - after.disp()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("HOM interference") {
    const PreparedExperiment prepared(hom(0.999));
    const double p = prepared.herald_probabilities()[0];
    CHECK(prepared.herald_probabilities()[1] == p);
    CHECK(conditional_probability(prepared, PhotonPattern{1, 1}) <= 1e-3);
    const double p20 = conditional_probability(prepared, PhotonPattern{2, 0});
    const double p02 = conditional_probability(prepared, PhotonPattern{0, 2});
    CHECK(std::abs(p20 - p02) <= 1e-9);
    CHECK(joint_probability(prepared, PhotonPattern{2, 0}) == doctest::Approx(0.5 * p * p).epsilon(1e-5));
}

TEST_CASE("single heralded photon is detected") {
    Experiment exp;
    exp.sources = {prep::source_for_target(prep::TargetState::single_photon(), 0.5, 0.999)};
    exp.interferometer = CMatrix::Identity(1, 1);
    exp.wiring = {0};
    exp.cutoff = 4;
    CHECK(conditional_probability(exp, PhotonPattern{1}) > 0.9999);
    CHECK(conditional_probability(exp, PhotonPattern{0}) < 1e-12);
}

TEST_CASE("divide-then-evaluate equals the absorbed single evaluation") {
    for (const auto& oc : validation::standard_oracle_suite()) {
        const PreparedExperiment prepared(oc.experiment);
        for (const auto& pattern : enumerate_patterns(oc.experiment.system_modes(), oc.experiment.cutoff)) {
            const double a = conditional_probability(prepared, pattern);
            const double b = conditional_probability_absorbed(prepared, pattern);
            CHECK(std::abs(a - b) <= 1e-9 * std::max(a, b) + 1e-13);
        }
    }
}

TEST_CASE("no heralds reduces to plain photon counting") {
    Experiment exp;
    exp.sources = {prep::source_for_target(prep::TargetState::fock(0), 0.5, 0.9)};
    exp.interferometer = CMatrix::Identity(2, 2);
    exp.wiring = {1};
    exp.cutoff = 2;
    const PreparedExperiment prepared(exp);
    CHECK(prepared.log_herald_weight() == 0.0);
    CHECK(conditional_probability_absorbed(prepared, PhotonPattern{0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("vacuum experiment") {
    Experiment exp;
    exp.interferometer = CMatrix::Identity(3, 3);
    exp.cutoff = 0;
    const auto dist = full_distribution(exp);
    REQUIRE(dist.size() == 1);
    CHECK(dist.probabilities[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(dist.tail_mass) < 1e-14);
}

TEST_CASE("normalisation and range") {
    for (const auto& oc : validation::standard_oracle_suite()) {
        const auto dist = full_distribution(oc.experiment);
        CHECK(dist.total() <= 1.0 + 1e-9);
        CHECK(std::abs(dist.total() + dist.tail_mass - 1.0) < 1e-15);
        CHECK(dist.tail_mass < 0.02);
        for (double p : dist.probabilities) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("permuting interferometer rows permutes the distribution") {
    Experiment exp = validation::standard_oracle_suite()[7].experiment;  // one source into a random 3-mode U
    const auto base = full_distribution(exp);
    const std::vector<int> perm{2, 0, 1};
    CMatrix permuted(3, 3);
    for (int i = 0; i < 3; ++i) permuted.row(i) = exp.interferometer.row(perm[i]);
    exp.interferometer = permuted;
    const auto moved = full_distribution(exp);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto& p = moved.patterns[i];
        // output mode i of the permuted device is output mode perm[i] of the original
        PhotonPattern original{0, 0, 0};
        for (int m = 0; m < 3; ++m) original.counts[perm[m]] = p[m];
        CHECK(std::abs(moved.probabilities[i] - probability_of(base, original)) < 1e-12);
    }
}

TEST_CASE("serial and parallel distributions are identical") {
    const auto exp = validation::standard_oracle_suite()[12].experiment;
    const auto s = full_distribution(exp, Execution::Serial);
    const auto p = full_distribution(exp, Execution::Parallel);
    CHECK(s.probabilities == p.probabilities);
}

TEST_CASE("a source that never heralds is rejected") {
    Experiment exp;
    exp.sources = {SourceSpec{0.0, 0.9, {Complex(0.0, 0.0)}}};
    exp.interferometer = CMatrix::Identity(1, 1);
    exp.wiring = {0};
    exp.cutoff = 2;
    try {
        (void)PreparedExperiment(exp);
        FAIL("expected HeraldImpossible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HeraldImpossible);
    }
}

TEST_CASE("sampling") {
    const auto exp = hom(0.9);
    CHECK(sample(exp, 0, 1).empty());
    CHECK(sample(exp, 50, 42) == sample(exp, 50, 42));
    CHECK(sample(exp, 50, 42) != sample(exp, 50, 43));

    const auto dist = full_distribution(exp);
    const int count = 100000;
    const auto draws = sample(dist, count, 7);
    std::map<std::vector<int>, int> hist;
    for (const auto& d : draws) ++hist[d.counts];
    for (const PhotonPattern& pattern : {PhotonPattern{1, 1}, PhotonPattern{2, 0}, PhotonPattern{0, 4}}) {
        const double exact = probability_of(dist, pattern) / dist.total();
        const double sigma = std::sqrt(exact * (1.0 - exact) / count);
        const double empirical = static_cast<double>(hist[pattern.counts]) / count;
        CHECK(std::abs(empirical - exact) <= 3.0 * sigma + 1e-12);
    }
}
