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

#include <cmath>
#include <vector>

#include "ngbs/fock.hpp"
#include "ngbs/validation.hpp"

using namespace ngbs;
using namespace ngbs::fock;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

double low_block_defect(const CMatrix& m, int size) {
    return (m.topLeftCorner(size, size) - CMatrix::Identity(size, size)).cwiseAbs().maxCoeff();
}

double probability_of(const Distribution& d, const PhotonPattern& p) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.patterns[i] == p) return d.probabilities[i];
    }
    FAIL("pattern not enumerated");
    return 0.0;
}

CMatrix bs50() {
    CMatrix u(2, 2);
    const double h = std::sqrt(0.5);
    u << h, h, -h, h;
    return u;
}

}  // namespace

TEST_CASE("single-mode operators") {
    const int d = 30;
    CHECK(low_block_defect(displace_matrix(Complex(0.0, 0.0), d), d + 1) < 1e-15);
    CHECK(low_block_defect(squeeze_matrix(0.6, d) * squeeze_matrix(-0.6, d), d / 2) < 1e-8);
    const CMatrix u = displace_matrix(Complex(0.4, -0.3), d);
    CHECK(low_block_defect(u.adjoint() * u, d / 2) < 1e-8);
}

TEST_CASE("coherent and squeezed amplitudes") {
    const int d = 40;
    const Complex alpha(0.9, 0.4);
    const CMatrix dm = displace_matrix(alpha, d);
    for (int n = 0; n <= 8; ++n) {
        const double poisson = std::exp(-std::norm(alpha)) * std::pow(std::norm(alpha), n) / factorial(n);
        CHECK(std::norm(dm(n, 0)) == doctest::Approx(poisson).epsilon(1e-12));
    }
    const double r = 0.5;
    const CMatrix sm = squeeze_matrix(r, d);
    for (int k = 0; k <= 5; ++k) {
        const double p = factorial(2 * k) / (std::pow(4.0, k) * factorial(k) * factorial(k)) *
                         std::pow(std::tanh(r), 2 * k) / std::cosh(r);
        CHECK(std::norm(sm(2 * k, 0)) == doctest::Approx(p).epsilon(1e-12));
        CHECK(std::abs(sm(2 * k + 1, 0)) < 1e-14);
    }
}

TEST_CASE("Hong-Ou-Mandel on the dense beamsplitter") {
    const int d = 3;
    const CMatrix bs = beamsplitter_matrix(0.5, d);
    const auto idx = [d](int i, int j) { return i * (d + 1) + j; };
    const CVector out = bs.col(idx(1, 1));
    CHECK(std::abs(out(idx(1, 1))) < 1e-14);
    CHECK(std::norm(out(idx(2, 0))) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(out(idx(0, 2))) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(low_block_defect(bs.adjoint() * bs, (d + 1) * (d + 1)) < 1e-12);
}

TEST_CASE("beamsplitter Heisenberg action on a single photon") {
    const double t = 0.3;
    const int d = 2;
    const CMatrix bs = beamsplitter_matrix(t, d);
    // a_0^dagger |0,0> -> sqrt(t) a_0^dagger - sqrt(1-t) a_1^dagger (transpose of the mode matrix)
    const CVector out = bs.col(1 * (d + 1) + 0);
    CHECK(std::abs(out(1 * (d + 1) + 0) - std::sqrt(t)) < 1e-14);
    CHECK(std::abs(out(0 * (d + 1) + 1) + std::sqrt(1.0 - t)) < 1e-14);
}

TEST_CASE("mesh decomposition reconstructs the interferometer") {
    for (int n : {1, 2, 3, 5}) {
        const CMatrix u = validation::random_unitary(n, 40 + n);
        const Mesh mesh = decompose_interferometer(u);
        CHECK((reconstruct(mesh) - u).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(static_cast<int>(mesh.elements.size()) == n * (n - 1) / 2);
    }
    const CMatrix id = CMatrix::Identity(3, 3);
    CHECK((reconstruct(decompose_interferometer(id)) - id).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("source simulation edge cases") {
    const SourceResult dark = simulate_source(SourceSpec{0.0, 0.9, {Complex(0.0, 0.0)}});
    CHECK(dark.herald_probability == 0.0);

    const SourceResult plain = simulate_source(SourceSpec{0.3, 1.0, {}});
    CHECK(plain.herald_probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::norm(plain.system_state[0]) == doctest::Approx(1.0).epsilon(1e-12));

    try {
        (void)simulate_source(SourceSpec{0.5, 0.9, {Complex(0.0, 0.0)}}, 8);
        FAIL("expected CutoffTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CutoffTooSmall);
    }
}

TEST_CASE("doubling the source cutoff changes nothing") {
    const SourceSpec spec{0.5, 0.99, {Complex(0.0, -0.766551), Complex(0.0, 0.766551)}};
    const SourceResult base = simulate_source(spec);
    const SourceResult wide = simulate_source(spec, 2 * base.system_cutoff);
    CHECK(std::abs(base.herald_probability - wide.herald_probability) <= 1e-8 * wide.herald_probability);
    for (int n = 0; n <= 10; ++n) CHECK(std::abs(base.system_state[n] - wide.system_state[n]) < 1e-8);
}

TEST_CASE("HOM suppression improves as t -> 1") {
    double previous = 1.0;
    for (double t : {0.9, 0.99, 0.999}) {
        Experiment exp;
        exp.sources = {SourceSpec{0.5, t, {Complex(0.0, 0.0)}}, SourceSpec{0.5, t, {Complex(0.0, 0.0)}}};
        exp.interferometer = bs50();
        exp.wiring = {0, 1};
        exp.cutoff = 4;
        const Distribution dist = simulate_experiment(exp, 4);
        const double p11 = probability_of(dist, PhotonPattern{1, 1});
        const double p20 = probability_of(dist, PhotonPattern{2, 0});
        CHECK(p11 <= previous + 1e-15);
        CHECK(p20 > 0.45);
        previous = p11;
    }
    CHECK(previous <= 1e-3);
}

TEST_CASE("oracle state size limit") {
    Experiment exp;
    exp.interferometer = CMatrix::Identity(8, 8);
    exp.cutoff = 10;
    try {
        (void)simulate_experiment(exp, 10);
        FAIL("expected DimensionTooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionTooLarge);
    }
}

TEST_CASE("total photon distribution is invariant under the interferometer") {
    Experiment exp;
    exp.sources = {SourceSpec{0.5, 0.9, {Complex(0.0, 0.0)}}, SourceSpec{0.5, 0.95, {Complex(0.0, 0.4)}}};
    exp.interferometer = CMatrix::Identity(3, 3);
    exp.wiring = {0, 2};
    exp.cutoff = 4;
    const auto totals = [](const Distribution& d) {
        std::vector<double> out(5, 0.0);
        for (std::size_t i = 0; i < d.size(); ++i) out[d.patterns[i].total()] += d.probabilities[i];
        return out;
    };
    const auto before = totals(simulate_experiment(exp, 4));
    exp.interferometer = validation::random_unitary(3, 99);
    const auto after = totals(simulate_experiment(exp, 4));
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(before[n] - after[n]) < 1e-12);
}
