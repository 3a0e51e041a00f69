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

#include <cmath>
#include <string>

#include "ngbs/fock.hpp"

namespace ngbs::fock {

Mesh decompose_interferometer(const CMatrix& u) {
    const Index n = u.rows();
    if (u.cols() != n || n < 1) {
        throw Error(ErrorCode::InvalidArgument, "decompose_interferometer: U must be square");
    }
    const double defect = unitarity_defect(u);
    if (defect > 1e-10) {
        throw Error(ErrorCode::NonUnitary, "decompose_interferometer: defect " + std::to_string(defect));
    }

    // G_L ... G_1 U = D with each G a rotation on rows (q - 1, q) that zeroes
    // entry (q, col); then U = G_1^dag ... G_L^dag D.
    CMatrix work = u;
    std::vector<MeshElement> nulling;
    for (Index col = 0; col + 1 < n; ++col) {
        for (Index q = n - 1; q > col; --q) {
            const Index p = q - 1;
            const Complex a = work(p, col);
            const Complex b = work(q, col);
            const double norm = std::hypot(std::abs(a), std::abs(b));
            if (std::abs(b) == 0.0 || norm == 0.0) continue;
            Eigen::Matrix2cd g;
            g << std::conj(a) / norm, std::conj(b) / norm, -b / norm, a / norm;
            const Eigen::Matrix<Complex, 2, Eigen::Dynamic> rows =
                (Eigen::Matrix<Complex, 2, Eigen::Dynamic>(2, n) << work.row(p), work.row(q)).finished();
            const Eigen::Matrix<Complex, 2, Eigen::Dynamic> mixed = g * rows;
            work.row(p) = mixed.row(0);
            work.row(q) = mixed.row(1);
            work(q, col) = Complex{};
            nulling.push_back({static_cast<int>(p), static_cast<int>(q), g});
        }
    }

    Mesh mesh;
    mesh.phases.resize(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
        const Complex d = work(k, k);
        mesh.phases[k] = d / std::abs(d);
    }
    // D acts first, then G_L^dag, ..., G_1^dag
    for (auto it = nulling.rbegin(); it != nulling.rend(); ++it) {
        mesh.elements.push_back({it->mode_i, it->mode_j, it->unitary.adjoint()});
    }
    return mesh;
}

CMatrix reconstruct(const Mesh& mesh) {
    const Index n = static_cast<Index>(mesh.phases.size());
    CMatrix w = CMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) w(k, k) = mesh.phases[k];
    for (const MeshElement& e : mesh.elements) {
        CMatrix emb = CMatrix::Identity(n, n);
        emb(e.mode_i, e.mode_i) = e.unitary(0, 0);
        emb(e.mode_i, e.mode_j) = e.unitary(0, 1);
        emb(e.mode_j, e.mode_i) = e.unitary(1, 0);
        emb(e.mode_j, e.mode_j) = e.unitary(1, 1);
        w = emb * w;
    }
    return w;
}

}  // namespace ngbs::fock
