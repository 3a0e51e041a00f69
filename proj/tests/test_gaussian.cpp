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

#include "ngbs/gaussian.hpp"
#include "ngbs/hafnian.hpp"

using namespace ngbs;
using namespace ngbs::gaussian;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Pr(2n) of a squeezed vacuum, photon-number basis.
double squeezed_vacuum_prob(double r, int n) {
    if (n % 2) return 0.0;
    const int k = n / 2;
    return factorial(2 * k) / (std::pow(4.0, k) * factorial(k) * factorial(k)) * std::pow(std::tanh(r), 2 * k) /
           std::cosh(r);
}

}  // namespace

TEST_CASE("vacuum has sigma I/2 and trivial A, F") {
    const auto v = GaussianState::vacuum(3);
    CHECK((v.sigma() - 0.5 * CMatrix::Identity(6, 6)).norm() == 0.0);
    CHECK(v.disp().norm() == 0.0);
    const AFPair af = build_af(v);
    CHECK(af.a_matrix.norm() < 1e-15);
    CHECK(af.f_vector.norm() < 1e-15);
    CHECK(af.prefactor.value() == doctest::Approx(1.0));
    CHECK(purity_indicator(v) == doctest::Approx(1.0));
}

TEST_CASE("squeezed vacuum photon statistics") {
    const double r = 0.7;
    const auto s = squeeze(GaussianState::vacuum(1), 0, r);
    CHECK(purity_indicator(s) == doctest::Approx(1.0).epsilon(1e-12));
    const AFPair af = build_af(s);
    for (int n = 0; n <= 8; ++n) {
        const double p = hafnian::probability(af, PhotonPattern{n});
        CHECK(std::abs(p - squeezed_vacuum_prob(r, n)) < 1e-13);
    }
}

TEST_CASE("coherent state photon statistics are Poissonian") {
    const Complex alpha(0.8, -0.6);
    const auto s = displace(GaussianState::vacuum(1), 0, alpha);
    const AFPair af = build_af(s);
    const double mean = std::norm(alpha);
    for (int n = 0; n <= 6; ++n) {
        const double poisson = std::exp(-mean) * std::pow(mean, n) / factorial(n);
        CHECK(hafnian::probability(af, PhotonPattern{n}) == doctest::Approx(poisson).epsilon(1e-12));
    }
}

TEST_CASE("displaced squeezed state probabilities sum to one") {
    const double r = 0.4;
    const Complex alpha(0.5, 0.3);
    const auto s = displace(squeeze(GaussianState::vacuum(1), 0, r), 0, alpha);
    const AFPair af = build_af(s);
    double total = 0.0;
    for (int n = 0; n <= 30; ++n) total += hafnian::probability(af, PhotonPattern{n});
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("beamsplitter moves coherent amplitudes like the Heisenberg matrix") {
    const double t = 0.3;
    auto s = displace(GaussianState::vacuum(2), 0, Complex(1.0, 0.5));
    s = beamsplitter(s, 0, 1, t);
    CHECK(std::abs(s.disp()(0) - std::sqrt(t) * Complex(1.0, 0.5)) < 1e-14);
    CHECK(std::abs(s.disp()(1) + std::sqrt(1.0 - t) * Complex(1.0, 0.5)) < 1e-14);
    CHECK(std::abs(s.disp()(3) - std::conj(s.disp()(1))) < 1e-15);
}

TEST_CASE("unitary followed by its inverse is the identity") {
    auto s = squeeze(GaussianState::vacuum(3), 1, 0.3);
    s = displace(s, 2, Complex(0.2, -0.1));
    CMatrix u(3, 3);
    const double h = std::sqrt(0.5);
    u << h, Complex(0, h), 0, Complex(0, h), h, 0, 0, 0, Complex(0, 1);
    const std::vector<int> modes{0, 1, 2};
    const auto back = apply_unitary(apply_unitary(s, u, modes), u.adjoint(), modes);
    CHECK((back.sigma() - s.sigma()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((back.disp() - s.disp()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("non-unitary interferometer is rejected") {
    CMatrix u = CMatrix::Identity(2, 2);
    u(0, 1) = 0.1;
    const std::vector<int> modes{0, 1};
    try {
        (void)apply_unitary(GaussianState::vacuum(2), u, modes);
        FAIL("expected NonUnitary");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonUnitary);
    }
}

TEST_CASE("reduce, direct_sum and permute_modes are consistent") {
    const auto a = squeeze(GaussianState::vacuum(1), 0, 0.2);
    const auto b = displace(GaussianState::vacuum(1), 0, Complex(0.4, 0.0));
    const auto ab = direct_sum(a, b);
    const std::vector<int> first{0}, second{1}, swap{1, 0};
    CHECK((reduce(ab, first).sigma() - a.sigma()).norm() < 1e-15);
    CHECK((reduce(ab, second).disp() - b.disp()).norm() < 1e-15);
    const auto ba = permute_modes(ab, swap);
    CHECK((ba.sigma() - direct_sum(b, a).sigma()).norm() < 1e-15);
    CHECK((ba.disp() - direct_sum(b, a).disp()).norm() < 1e-15);
}

TEST_CASE("malformed covariance structure is rejected") {
    CMatrix sigma = 0.5 * CMatrix::Identity(2, 2);
    sigma(0, 1) = Complex(0.1, 0.0);  // S without conj(S) partner
    CHECK_THROWS_AS(GaussianState(sigma, CVector::Zero(2)), Error);
}

TEST_CASE("singular sigma_Q is reported") {
    CMatrix sigma = -0.5 * CMatrix::Identity(2, 2);
    const GaussianState s(sigma, CVector::Zero(2));
    try {
        (void)build_af(s);
        FAIL("expected SingularSigmaQ");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SingularSigmaQ);
    }
}
