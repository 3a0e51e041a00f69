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

#include "ngbs/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ngbs::gaussian {

namespace {

constexpr double kStructureTol = 1e-10;

void check_mode(const GaussianState& s, int mode, const char* op) {
    if (mode < 0 || mode >= s.mode_count()) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(op) + ": mode " + std::to_string(mode) + " out of range");
    }
}

// Doubled matrix U (+) conj(U) for an M x M mode transformation.
CMatrix doubled(const CMatrix& u) {
    const Index m = u.rows();
    CMatrix w = CMatrix::Zero(2 * m, 2 * m);
    w.topLeftCorner(m, m) = u;
    w.bottomRightCorner(m, m) = u.conjugate();
    return w;
}

// Row/column indices of the (alpha, alpha*) blocks for a list of modes.
std::vector<Index> doubled_indices(std::span<const int> modes, int total) {
    std::vector<Index> idx;
    idx.reserve(2 * modes.size());
    for (int m : modes) idx.push_back(m);
    for (int m : modes) idx.push_back(total + m);
    return idx;
}

}  // namespace

GaussianState::GaussianState(CMatrix sigma, CVector disp)
    : sigma_(std::move(sigma)), disp_(std::move(disp)) {
    const Index n = disp_.size();
    if (n == 0 || n % 2 != 0 || sigma_.rows() != n || sigma_.cols() != n) {
        throw Error(ErrorCode::InvalidArgument, "GaussianState: sigma must be 2M x 2M and disp length 2M");
    }
    const Index m = n / 2;
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    const CMatrix c = sigma_.topLeftCorner(m, m);
    const CMatrix s = sigma_.topRightCorner(m, m);
    double defect = (c - c.adjoint()).cwiseAbs().maxCoeff();
    defect = std::max(defect, (s - s.transpose()).cwiseAbs().maxCoeff());
    defect = std::max(defect, (sigma_.bottomLeftCorner(m, m) - s.conjugate()).cwiseAbs().maxCoeff());
    defect = std::max(defect, (sigma_.bottomRightCorner(m, m) - c.conjugate()).cwiseAbs().maxCoeff());
    if (defect > kStructureTol * scale) {
        throw Error(ErrorCode::InvalidArgument,
                    "GaussianState: sigma violates [[C,S],[S*,C*]] structure by " + std::to_string(defect));
    }
    const double dscale = std::max(1.0, disp_.cwiseAbs().maxCoeff());
    if ((disp_.tail(m) - disp_.head(m).conjugate()).cwiseAbs().maxCoeff() > kStructureTol * dscale) {
        throw Error(ErrorCode::InvalidArgument, "GaussianState: disp is not conjugate-paired");
    }
}

GaussianState::GaussianState(Unchecked, CMatrix sigma, CVector disp)
    : sigma_(std::move(sigma)), disp_(std::move(disp)) {}

GaussianState GaussianState::vacuum(int modes) {
    if (modes < 1) {
        throw Error(ErrorCode::InvalidArgument, "vacuum: need at least one mode");
    }
    return GaussianState(Unchecked{}, CMatrix::Identity(2 * modes, 2 * modes) * 0.5,
                         CVector::Zero(2 * modes));
}

CMatrix GaussianState::sigma_q() const {
    return sigma_ + 0.5 * CMatrix::Identity(sigma_.rows(), sigma_.cols());
}

GaussianState transform(const GaussianState& state, const CMatrix& w) {
    CMatrix sigma = w * state.sigma() * w.adjoint();
    // strip rounding asymmetry so the structure invariant holds exactly
    const Index m = state.mode_count();
    CMatrix c = 0.5 * (sigma.topLeftCorner(m, m) + sigma.bottomRightCorner(m, m).conjugate());
    c = 0.5 * (c + c.adjoint()).eval();
    CMatrix s = 0.5 * (sigma.topRightCorner(m, m) + sigma.bottomLeftCorner(m, m).conjugate());
    s = 0.5 * (s + s.transpose()).eval();
    sigma.topLeftCorner(m, m) = c;
    sigma.bottomRightCorner(m, m) = c.conjugate();
    sigma.topRightCorner(m, m) = s;
    sigma.bottomLeftCorner(m, m) = s.conjugate();

    CVector disp = w * state.disp();
    disp.tail(m) = disp.head(m).conjugate();
    return GaussianState(GaussianState::Unchecked{}, std::move(sigma), std::move(disp));
}

GaussianState squeeze(const GaussianState& state, int mode, double r) {
    check_mode(state, mode, "squeeze");
    const Index m = state.mode_count();
    CMatrix w = CMatrix::Identity(2 * m, 2 * m);
    w(mode, mode) = std::cosh(r);
    w(m + mode, m + mode) = std::cosh(r);
    w(mode, m + mode) = -std::sinh(r);
    w(m + mode, mode) = -std::sinh(r);
    return transform(state, w);
}

GaussianState displace(const GaussianState& state, int mode, Complex alpha) {
    check_mode(state, mode, "displace");
    CVector disp = state.disp();
    disp(mode) += alpha;
    disp(state.mode_count() + mode) += std::conj(alpha);
    return GaussianState(GaussianState::Unchecked{}, state.sigma(), std::move(disp));
}

GaussianState beamsplitter(const GaussianState& state, int i, int j, double t) {
    check_mode(state, i, "beamsplitter");
    check_mode(state, j, "beamsplitter");
    if (i == j) {
        throw Error(ErrorCode::InvalidArgument, "beamsplitter: modes must differ");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "beamsplitter: t must lie in [0, 1]");
    }
    const double c = std::sqrt(t);
    const double s = std::sqrt(1.0 - t);
    CMatrix u = CMatrix::Identity(state.mode_count(), state.mode_count());
    u(i, i) = c;
    u(i, j) = s;
    u(j, i) = -s;
    u(j, j) = c;
    return transform(state, doubled(u));
}

GaussianState apply_unitary(const GaussianState& state, const CMatrix& u, std::span<const int> modes) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != modes.size()) {
        throw Error(ErrorCode::InvalidArgument, "apply_unitary: U must be square and match the mode list");
    }
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
        throw Error(ErrorCode::NonUnitary, "apply_unitary: max|U^dag U - I| = " + std::to_string(defect));
    }
    std::set<int> seen;
    for (int m : modes) {
        check_mode(state, m, "apply_unitary");
        if (!seen.insert(m).second) {
            throw Error(ErrorCode::InvalidArgument, "apply_unitary: repeated mode");
        }
    }
    CMatrix emb = CMatrix::Identity(state.mode_count(), state.mode_count());
    for (std::size_t a = 0; a < modes.size(); ++a) {
        for (std::size_t b = 0; b < modes.size(); ++b) {
            emb(modes[a], modes[b]) = u(static_cast<Index>(a), static_cast<Index>(b));
        }
    }
    return transform(state, doubled(emb));
}

GaussianState reduce(const GaussianState& state, std::span<const int> keep) {
    if (keep.empty()) {
        throw Error(ErrorCode::InvalidArgument, "reduce: keep list is empty");
    }
    std::set<int> seen;
    for (int m : keep) {
        check_mode(state, m, "reduce");
        if (!seen.insert(m).second) {
            throw Error(ErrorCode::InvalidArgument, "reduce: repeated mode");
        }
    }
    const auto idx = doubled_indices(keep, state.mode_count());
    const Index n = static_cast<Index>(idx.size());
    CMatrix sigma(n, n);
    CVector disp(n);
    for (Index a = 0; a < n; ++a) {
        disp(a) = state.disp()(idx[a]);
        for (Index b = 0; b < n; ++b) {
            sigma(a, b) = state.sigma()(idx[a], idx[b]);
        }
    }
    return GaussianState(GaussianState::Unchecked{}, std::move(sigma), std::move(disp));
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
    const Index ma = a.mode_count();
    const Index mb = b.mode_count();
    const Index m = ma + mb;
    CMatrix sigma = CMatrix::Zero(2 * m, 2 * m);
    CVector disp(2 * m);
    // a occupies modes [0, ma), b occupies [ma, m)
    for (int blk_r = 0; blk_r < 2; ++blk_r) {
        for (int blk_c = 0; blk_c < 2; ++blk_c) {
            sigma.block(blk_r * m, blk_c * m, ma, ma) = a.sigma().block(blk_r * ma, blk_c * ma, ma, ma);
            sigma.block(blk_r * m + ma, blk_c * m + ma, mb, mb) = b.sigma().block(blk_r * mb, blk_c * mb, mb, mb);
        }
        disp.segment(blk_r * m, ma) = a.disp().segment(blk_r * ma, ma);
        disp.segment(blk_r * m + ma, mb) = b.disp().segment(blk_r * mb, mb);
    }
    return GaussianState(GaussianState::Unchecked{}, std::move(sigma), std::move(disp));
}

GaussianState permute_modes(const GaussianState& state, std::span<const int> order) {
    if (static_cast<int>(order.size()) != state.mode_count()) {
        throw Error(ErrorCode::InvalidArgument, "permute_modes: order must list every mode once");
    }
    return reduce(state, order);
}

double purity_indicator(const GaussianState& state) {
    return (2.0 * state.sigma()).determinant().real();
}

double Prefactor::value() const {
    return exp_factor / std::sqrt(det_sigma_q);
}

AFPair build_af(const GaussianState& state) {
    const CMatrix sq = state.sigma_q();
    const Index n = sq.rows();
    const Index m = n / 2;

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(sq, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12) {
        throw Error(ErrorCode::SingularSigmaQ, "sigma_Q eigenvalue range [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
    }

    const Eigen::LLT<CMatrix> llt(sq);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::SingularSigmaQ, "Cholesky factorisation of sigma_Q failed");
    }
    const CMatrix& l = llt.matrixLLT();
    double log_det = 0.0;
    for (Index i = 0; i < n; ++i) {
        log_det += 2.0 * std::log(std::real(l(i, i)));
    }
    const CMatrix q_inv = llt.solve(CMatrix::Identity(n, n));

    CMatrix x = CMatrix::Zero(n, n);
    x.topRightCorner(m, m).setIdentity();
    x.bottomLeftCorner(m, m).setIdentity();
    CMatrix a = x * (CMatrix::Identity(n, n) - q_inv);
    a = 0.5 * (a + a.transpose()).eval();

    const CVector& d = state.disp();
    CVector f = q_inv.transpose() * d.conjugate();
    const double quad = std::real(d.dot(q_inv * d));  // d^dagger Q^{-1} d

    AFPair out;
    out.a_matrix = std::move(a);
    out.f_vector = std::move(f);
    out.prefactor.det_sigma_q = std::exp(log_det);
    out.prefactor.exp_factor = std::exp(-0.5 * quad);
    return out;
}

}  // namespace ngbs::gaussian
