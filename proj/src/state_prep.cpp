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

#include "ngbs/state_prep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "ngbs/fock.hpp"
#include "ngbs/hafnian.hpp"

namespace ngbs::prep {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

Complex eval_poly(const std::vector<Complex>& c, Complex x) {
    Complex acc{};
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

Complex eval_poly_derivative(const std::vector<Complex>& c, Complex x) {
    Complex acc{};
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c[k];
    return acc;
}

// Roots of sum_k c_k x^k (constant first, c.back() != 0).
std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    CMatrix companion = CMatrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) companion(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidArgument, "companion-matrix eigenvalue solve failed");
    }
    std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

    for (Complex& x : roots) {
        const Complex p = eval_poly(c, x);
        const Complex dp = eval_poly_derivative(c, x);
        if (std::abs(dp) > 0.0) {
            const Complex polished = x - p / dp;
            if (std::abs(eval_poly(c, polished)) < std::abs(p)) x = polished;
        }
        double scale = 0.0;
        for (int k = 0; k <= n; ++k) scale += std::abs(c[k] / c[n]) * std::pow(std::abs(x), k);
        if (std::abs(eval_poly(c, x) / c[n]) > 1e-10 * std::max(1.0, scale)) {
            throw Error(ErrorCode::InvalidArgument, "polynomial root did not converge");
        }
    }
    return roots;
}

void canonical_sort(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::vector<Complex> negated_roots(const std::vector<Complex>& coeffs) {
    std::vector<Complex> alphas = polynomial_roots(coeffs);
    for (Complex& a : alphas) a = -a;
    canonical_sort(alphas);
    return alphas;
}

}  // namespace

TargetState::TargetState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    double norm = 0.0;
    double largest = 0.0;
    for (const Complex& v : amps_) {
        norm += std::norm(v);
        largest = std::max(largest, std::abs(v));
    }
    if (amps_.empty() || !(largest > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorCode::DegenerateTarget, "target has no non-zero amplitude");
    }
    for (Complex& v : amps_) v /= std::sqrt(norm);
    degree_ = 0;
    for (std::size_t n = 0; n < amps_.size(); ++n) {
        if (std::abs(amps_[n]) > 1e-14 * largest / std::sqrt(norm)) degree_ = static_cast<int>(n);
    }
    amps_.resize(static_cast<std::size_t>(degree_) + 1);
}

TargetState TargetState::from_amplitudes(std::vector<Complex> amplitudes) {
    return TargetState(std::move(amplitudes));
}

TargetState TargetState::from_creation_coeffs(const std::vector<Complex>& coeffs) {
    std::vector<Complex> amps(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) amps[n] = coeffs[n] * std::sqrt(factorial(static_cast<int>(n)));
    return TargetState(std::move(amps));
}

TargetState TargetState::fock(int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "fock: negative photon number");
    std::vector<Complex> amps(static_cast<std::size_t>(n) + 1);
    amps[n] = 1.0;
    return TargetState(std::move(amps));
}

TargetState TargetState::even_cat(Complex alpha, int degree) {
    if (degree < 0) throw Error(ErrorCode::InvalidArgument, "even_cat: negative degree");
    std::vector<Complex> amps(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; n += 2) amps[n] = std::pow(alpha, n) / std::sqrt(factorial(n));
    return TargetState(std::move(amps));
}

std::vector<Complex> TargetState::creation_coeffs() const {
    std::vector<Complex> c(amps_.size());
    for (std::size_t n = 0; n < amps_.size(); ++n) c[n] = amps_[n] / std::sqrt(factorial(static_cast<int>(n)));
    return c;
}

std::vector<Complex> displacement_params(const TargetState& target) {
    return negated_roots(target.creation_coeffs());
}

std::vector<Complex> circuit_displacements(const TargetState& target, double r) {
    const int degree = target.degree();
    if (degree == 0) return {};
    if (!(r > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "circuit_displacements: squeezing r must be positive");
    }
    const std::vector<Complex> c = target.creation_coeffs();
    const double sh = std::sinh(r);
    const double kappa = std::cosh(r) / (2.0 * sh);
    std::vector<Complex> q(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; ++n) {
        for (int k = 0; 2 * k <= n; ++k) {
            const int m = n - 2 * k;
            const double w = factorial(n) / (factorial(k) * factorial(m)) * std::pow(kappa, k) *
                             std::pow(-1.0 / sh, m);
            q[m] += c[n] * w;
        }
    }
    return negated_roots(q);
}

SourceSpec source_for_target(const TargetState& target, double r, double t) {
    SourceSpec spec{r, t, circuit_displacements(target, r)};
    spec.validate();
    return spec;
}

std::vector<Complex> polynomial_from_roots(const std::vector<Complex>& alphas) {
    std::vector<Complex> c{Complex{1.0, 0.0}};
    for (const Complex a : alphas) {
        std::vector<Complex> next(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] += a * c[k];
        }
        c = std::move(next);
    }
    return c;
}

gaussian::GaussianState build_source(const SourceSpec& spec) {
    spec.validate();
    auto state = gaussian::GaussianState::vacuum(spec.mode_count());
    state = gaussian::squeeze(state, 0, spec.r);
    for (int j = 0; j < spec.herald_count(); ++j) {
        state = gaussian::displace(state, j + 1, herald_amplitude(spec.alphas[j], spec.t));
        state = gaussian::beamsplitter(state, 0, j + 1, spec.t);
    }
    return gaussian::squeeze(state, 0, -spec.r);
}

double herald_probability(const gaussian::GaussianState& source) {
    const int heralds = source.mode_count() - 1;
    if (heralds <= 0) return 1.0;
    std::vector<int> keep(static_cast<std::size_t>(heralds));
    std::iota(keep.begin(), keep.end(), 1);
    const auto marginal = gaussian::reduce(source, keep);
    const auto af = gaussian::build_af(marginal);
    return hafnian::probability(af, PhotonPattern(std::vector<int>(keep.size(), 1)));
}

std::vector<Complex> heralded_state(const SourceSpec& spec, int cutoff) {
    if (cutoff < spec.herald_count()) {
        throw Error(ErrorCode::InvalidArgument, "heralded_state: cutoff below the number of heralds");
    }
    const fock::SourceResult res = fock::simulate_source(spec);
    if (res.herald_probability <= 0.0) {
        throw Error(ErrorCode::HeraldImpossible, "heralding pattern has zero probability");
    }
    std::vector<Complex> amps(static_cast<std::size_t>(cutoff) + 1);
    double kept = 0.0;
    for (int n = 0; n <= cutoff && n < static_cast<int>(res.system_state.size()); ++n) {
        amps[n] = res.system_state[n];
        kept += std::norm(amps[n]);
    }
    if (1.0 - kept > 1e-6) {
        throw Error(ErrorCode::CutoffTooSmall,
                    "heralded state weight above cutoff " + std::to_string(cutoff) + " is " +
                        std::to_string(1.0 - kept));
    }
    for (Complex& v : amps) v /= std::sqrt(kept);
    return amps;
}

double fidelity(const SourceSpec& spec, const TargetState& target, int cutoff) {
    std::vector<Complex> psi;
    if (cutoff > 0) {
        if (target.degree() > cutoff) {
            throw Error(ErrorCode::CutoffTooSmall, "fidelity: target degree exceeds cutoff");
        }
        psi = heralded_state(spec, cutoff);
    } else {
        const fock::SourceResult res = fock::simulate_source(spec);
        if (res.herald_probability <= 0.0) {
            throw Error(ErrorCode::HeraldImpossible, "heralding pattern has zero probability");
        }
        psi = res.system_state;
    }
    Complex overlap{};
    for (std::size_t n = 0; n < target.amplitudes().size() && n < psi.size(); ++n) {
        overlap += std::conj(target.amplitudes()[n]) * psi[n];
    }
    return std::min(1.0, std::norm(overlap));
}

}  // namespace ngbs::prep
