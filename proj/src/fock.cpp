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

#include "ngbs/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "fock_detail.hpp"

namespace ngbs::fock {

namespace {

CMatrix annihilation(int cutoff) {
    CMatrix a = CMatrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

void check_cutoff(int cutoff) {
    if (cutoff < 1) {
        throw Error(ErrorCode::InvalidArgument, "Fock cutoff must be at least 1");
    }
}

}  // namespace

CMatrix squeeze_matrix(double r, int cutoff) {
    check_cutoff(cutoff);
    const CMatrix a = annihilation(cutoff);
    const CMatrix gen = 0.5 * r * (a * a - a.adjoint() * a.adjoint());
    return gen.exp();
}

CMatrix displace_matrix(Complex alpha, int cutoff) {
    check_cutoff(cutoff);
    const CMatrix a = annihilation(cutoff);
    const CMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return gen.exp();
}

CMatrix phase_matrix(double phi, int cutoff) {
    check_cutoff(cutoff);
    CMatrix p = CMatrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) p(n, n) = std::polar(1.0, phi * n);
    return p;
}

TwoModeOperator TwoModeOperator::beamsplitter(double t, int cutoff_i, int cutoff_j) {
    check_cutoff(cutoff_i);
    check_cutoff(cutoff_j);
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "beamsplitter: t must lie in [0, 1]");
    }
    const double theta = std::acos(std::sqrt(t));
    TwoModeOperator op;
    op.cutoff_i_ = cutoff_i;
    op.cutoff_j_ = cutoff_j;
    for (int n = 0; n <= cutoff_i + cutoff_j; ++n) {
        const int k0 = std::max(0, n - cutoff_j);
        const int k1 = std::min(n, cutoff_i);
        const int size = k1 - k0 + 1;
        // generator theta (a_i^dag a_j - a_i a_j^dag) on states (k, n - k)
        CMatrix gen = CMatrix::Zero(size, size);
        for (int k = k0; k <= k1; ++k) {
            const int l = n - k;
            const int col = k - k0;
            if (k + 1 <= k1) gen(col + 1, col) += theta * std::sqrt((k + 1.0) * l);
            if (k - 1 >= k0) gen(col - 1, col) -= theta * std::sqrt(k * (l + 1.0));
        }
        op.first_k_.push_back(k0);
        op.blocks_.push_back(gen.exp());
    }
    return op;
}

CMatrix TwoModeOperator::dense() const {
    const int dj = cutoff_j_ + 1;
    const int dim = (cutoff_i_ + 1) * dj;
    CMatrix out = CMatrix::Zero(dim, dim);
    for (std::size_t n = 0; n < blocks_.size(); ++n) {
        const CMatrix& b = blocks_[n];
        for (Index r = 0; r < b.rows(); ++r) {
            for (Index c = 0; c < b.cols(); ++c) {
                const int kr = first_k_[n] + static_cast<int>(r);
                const int kc = first_k_[n] + static_cast<int>(c);
                const int nn = static_cast<int>(n);
                out(kr * dj + (nn - kr), kc * dj + (nn - kc)) = b(r, c);
            }
        }
    }
    return out;
}

CMatrix beamsplitter_matrix(double t, int cutoff) {
    return TwoModeOperator::beamsplitter(t, cutoff, cutoff).dense();
}

FockState::FockState(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "FockState needs at least one mode");
    }
    stride_.assign(cutoffs_.size(), 1);
    std::size_t size = 1;
    for (std::size_t k = cutoffs_.size(); k-- > 0;) {
        if (cutoffs_[k] < 0) throw Error(ErrorCode::InvalidArgument, "negative cutoff");
        stride_[k] = size;
        size *= static_cast<std::size_t>(cutoffs_[k] + 1);
        if (size > 10'000'000) {
            throw Error(ErrorCode::DimensionTooLarge, "Fock space exceeds 1e7 amplitudes");
        }
    }
    amps_.assign(size, Complex{});
    amps_[0] = Complex{1.0, 0.0};
}

FockState FockState::product(const std::vector<std::vector<Complex>>& modes) {
    std::vector<int> cutoffs;
    for (const auto& m : modes) {
        if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty mode state");
        cutoffs.push_back(static_cast<int>(m.size()) - 1);
    }
    FockState s(cutoffs);
    std::vector<int> digit(modes.size(), 0);
    for (std::size_t idx = 0; idx < s.amps_.size(); ++idx) {
        Complex v{1.0, 0.0};
        for (std::size_t k = 0; k < modes.size(); ++k) v *= modes[k][digit[k]];
        s.amps_[idx] = v;
        for (std::size_t k = modes.size(); k-- > 0;) {
            if (++digit[k] <= s.cutoffs_[k]) break;
            digit[k] = 0;
        }
    }
    return s;
}

void FockState::apply(int mode, const CMatrix& op) {
    const int d = cutoffs_.at(mode) + 1;
    if (op.rows() != d || op.cols() != d) {
        throw Error(ErrorCode::InvalidArgument, "single-mode operator has the wrong size");
    }
    const std::size_t st = stride_[mode];
    const std::size_t block = st * d;
    CVector slice(d);
    for (std::size_t outer = 0; outer < amps_.size(); outer += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            const std::size_t base = outer + inner;
            for (int n = 0; n < d; ++n) slice(n) = amps_[base + n * st];
            const CVector out = op * slice;
            for (int n = 0; n < d; ++n) amps_[base + n * st] = out(n);
        }
    }
}

void FockState::apply(int i, int j, const TwoModeOperator& op) {
    if (i == j || op.cutoff_i_ != cutoffs_.at(i) || op.cutoff_j_ != cutoffs_.at(j)) {
        throw Error(ErrorCode::InvalidArgument, "two-mode operator does not match the state");
    }
    const std::size_t si = stride_[i];
    const std::size_t sj = stride_[j];
    std::vector<int> digit(cutoffs_.size(), 0);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
        if (digit[i] == 0 && digit[j] == 0) {
            for (std::size_t n = 0; n < op.blocks_.size(); ++n) {
                const CMatrix& b = op.blocks_[n];
                const Index sz = b.rows();
                CVector in(sz);
                for (Index c = 0; c < sz; ++c) {
                    const std::size_t k = static_cast<std::size_t>(op.first_k_[n] + c);
                    in(c) = amps_[base + k * si + (n - k) * sj];
                }
                const CVector out = b * in;
                for (Index c = 0; c < sz; ++c) {
                    const std::size_t k = static_cast<std::size_t>(op.first_k_[n] + c);
                    amps_[base + k * si + (n - k) * sj] = out(c);
                }
            }
        }
        for (std::size_t k = cutoffs_.size(); k-- > 0;) {
            if (++digit[k] <= cutoffs_[k]) break;
            digit[k] = 0;
        }
    }
}

FockState FockState::project(int mode, int n) const {
    if (mode < 0 || mode >= mode_count() || n < 0 || n > cutoffs_[mode]) {
        throw Error(ErrorCode::InvalidArgument, "project: mode or level out of range");
    }
    if (mode_count() == 1) {
        throw Error(ErrorCode::InvalidArgument, "project: cannot remove the last mode");
    }
    std::vector<int> rest = cutoffs_;
    rest.erase(rest.begin() + mode);
    FockState out(rest);
    const std::size_t st = stride_[mode];
    const std::size_t block = st * static_cast<std::size_t>(cutoffs_[mode] + 1);
    std::size_t w = 0;
    for (std::size_t outer = 0; outer < amps_.size(); outer += block) {
        for (std::size_t inner = 0; inner < st; ++inner) {
            out.amps_[w++] = amps_[outer + n * st + inner];
        }
    }
    return out;
}

double FockState::norm_squared() const {
    double acc = 0.0;
    for (const Complex& v : amps_) acc += std::norm(v);
    return acc;
}

Complex FockState::amplitude(const std::vector<int>& occupation) const {
    if (occupation.size() != cutoffs_.size()) {
        throw Error(ErrorCode::InvalidArgument, "amplitude: occupation length mismatch");
    }
    std::size_t idx = 0;
    for (std::size_t k = 0; k < occupation.size(); ++k) {
        if (occupation[k] < 0 || occupation[k] > cutoffs_[k]) return Complex{};
        idx += static_cast<std::size_t>(occupation[k]) * stride_[k];
    }
    return amps_[idx];
}

double FockState::population_above(int mode, int level) const {
    const std::size_t st = stride_.at(mode);
    const int d = cutoffs_[mode] + 1;
    double acc = 0.0;
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        const int n = static_cast<int>((idx / st) % d);
        if (n > level) acc += std::norm(amps_[idx]);
    }
    return acc;
}

int default_system_cutoff(const SourceSpec& spec) {
    // squeezed vacuum: Pr(2n) = (2n)! tanh^{2n} r / (4^n (n!)^2 cosh r);
    // the ratio of successive terms is below tanh^2 r, so term / (1 - tanh^2 r)
    // bounds the remaining tail
    const double th2 = std::pow(std::tanh(spec.r), 2);
    double term = 1.0 / std::cosh(spec.r);
    int n = 0;
    while (term / (1.0 - th2) > 1e-14 && n < 400) {
        ++n;
        term *= th2 * (2.0 * n) * (2.0 * n - 1.0) / (4.0 * n * n);
    }
    return std::max(16, 2 * n + 2 * spec.herald_count() + 8);
}

namespace {

SourceResult simulate_source_at(const SourceSpec& spec, int d) {
    check_cutoff(d);
    const auto check_tail = [d](const FockState& s, const char* stage) {
        const double total = s.norm_squared();
        if (total > 0.0 && s.population_above(0, d / 2) > 1e-8 * total) {
            throw Error(ErrorCode::CutoffTooSmall,
                        std::string("system mode weight above cutoff/2 ") + stage + " (cutoff " +
                            std::to_string(d) + ")");
        }
    };

    FockState system(std::vector<int>{d});
    system.apply(0, squeeze_matrix(spec.r, d));
    check_tail(system, "after squeezing");

    if (spec.herald_count() > 0) {
        const auto bs = TwoModeOperator::beamsplitter(spec.t, d, d);
        for (const Complex alpha : spec.alphas) {
            const CMatrix herald_op = displace_matrix(herald_amplitude(alpha, spec.t), d);
            std::vector<Complex> sys(system.amplitudes());
            std::vector<Complex> her(static_cast<std::size_t>(d + 1));
            for (int n = 0; n <= d; ++n) her[n] = herald_op(n, 0);
            FockState joint = FockState::product({sys, her});
            joint.apply(0, 1, bs);
            system = joint.project(1, 1);
            check_tail(system, "after a herald stage");
        }
    }
    system.apply(0, squeeze_matrix(-spec.r, d));
    check_tail(system, "after anti-squeezing");

    SourceResult out;
    out.system_cutoff = d;
    out.herald_probability = system.norm_squared();
    out.system_state = system.amplitudes();
    if (out.herald_probability > 0.0) {
        const double s = 1.0 / std::sqrt(out.herald_probability);
        for (Complex& v : out.system_state) v *= s;
    }
    return out;
}

}  // namespace

SourceResult simulate_source(const SourceSpec& spec, int cutoff) {
    spec.validate();
    if (cutoff > 0) return simulate_source_at(spec, cutoff);
    int d = default_system_cutoff(spec);
    for (;;) {
        try {
            return simulate_source_at(spec, d);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CutoffTooSmall || d >= kMaxAutoCutoff) throw;
        }
        d = std::min(kMaxAutoCutoff, d + d / 2);
    }
}

void apply_two_mode_unitary(FockState& state, int i, int j, const Eigen::Matrix2cd& v) {
    // v = diag(p1, p2) [[c, s], [-s, c]] diag(q1, 1) with c, s >= 0
    const double c = std::min(1.0, std::abs(v(0, 0)));
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    Complex p1, p2, q1;
    if (s < 1e-12) {
        p1 = v(0, 0) / c;
        p2 = v(1, 1) / c;
        q1 = 1.0;
    } else if (c < 1e-12) {
        p1 = v(0, 1) / s;
        p2 = -v(1, 0) / s;
        q1 = 1.0;
    } else {
        p1 = v(0, 1) / s;
        q1 = v(0, 0) / (p1 * c);
        p2 = v(1, 1) / c;
    }
    const int di = state.cutoff(i);
    const int dj = state.cutoff(j);
    state.apply(i, phase_matrix(std::arg(q1), di));
    state.apply(i, j, TwoModeOperator::beamsplitter(c * c, di, dj));
    state.apply(i, phase_matrix(std::arg(p1), di));
    state.apply(j, phase_matrix(std::arg(p2), dj));
}

Distribution simulate_experiment(const Experiment& exp, int cutoff) {
    exp.validate();
    const int modes = exp.system_modes();
    if (cutoff < 1) {
        throw Error(ErrorCode::InvalidArgument, "simulate_experiment: cutoff must be at least 1");
    }
    double dim = std::pow(static_cast<double>(cutoff + 1), modes);
    if (dim > 1e7) {
        throw Error(ErrorCode::DimensionTooLarge, "oracle state would hold " + std::to_string(dim) + " amplitudes");
    }

    std::vector<std::vector<Complex>> inputs(static_cast<std::size_t>(modes),
                                             std::vector<Complex>(static_cast<std::size_t>(cutoff + 1)));
    for (auto& m : inputs) m[0] = Complex{1.0, 0.0};
    for (std::size_t k = 0; k < exp.sources.size(); ++k) {
        const SourceResult src = simulate_source(exp.sources[k]);
        if (src.herald_probability < 1e-300) {
            throw Error(ErrorCode::HeraldImpossible, "source " + std::to_string(k) + " never heralds");
        }
        auto& m = inputs[exp.wiring[k]];
        for (int n = 0; n <= cutoff; ++n) {
            m[n] = n < static_cast<int>(src.system_state.size()) ? src.system_state[n] : Complex{};
        }
    }

    FockState state = FockState::product(inputs);
    const Mesh mesh = decompose_interferometer(exp.interferometer);
    for (int k = 0; k < modes; ++k) state.apply(k, phase_matrix(std::arg(mesh.phases[k]), cutoff));
    for (const MeshElement& e : mesh.elements) apply_two_mode_unitary(state, e.mode_i, e.mode_j, e.unitary);

    Distribution out;
    out.patterns = enumerate_patterns(modes, cutoff);
    out.probabilities.reserve(out.patterns.size());
    for (const PhotonPattern& p : out.patterns) out.probabilities.push_back(std::norm(state.amplitude(p.counts)));
    out.tail_mass = 1.0 - out.total();
    return out;
}

}  // namespace ngbs::fock
