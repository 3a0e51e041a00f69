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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ngbs/hafnian.hpp"

namespace ngbs::hafnian {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw Error(ErrorCode::DimensionTooLarge, "low-rank coefficient overflows 64-bit integers");
    }
    return out;
}

// (m - 1)!! for even m >= 0, with (-1)!! = 1
std::uint64_t double_factorial_odd(int m) {
    std::uint64_t out = 1;
    for (int k = m - 1; k > 1; k -= 2) out = checked_mul(out, static_cast<std::uint64_t>(k));
    return out;
}

double factor_residual(const MatchingInstance& inst, const LowRankFactor& factor) {
    if (inst.size() == 0) return 0.0;
    return (factor.g * factor.g.transpose() - inst.a_sub).cwiseAbs().maxCoeff();
}

}  // namespace

std::int64_t low_rank_term_count(Index n, Index rank) {
    // C(n + rank, rank)
    std::uint64_t c = 1;
    for (Index k = 1; k <= rank; ++k) {
        c = checked_mul(c, static_cast<std::uint64_t>(n + k)) / static_cast<std::uint64_t>(k);
    }
    return static_cast<std::int64_t>(c);
}

LowRankFactor factorize_low_rank(const MatchingInstance& inst, double rel_tol, double check_tol) {
    const Index n = inst.size();
    if (inst.a_sub.rows() != n || inst.a_sub.cols() != n) {
        throw Error(ErrorCode::InvalidArgument, "factorize_low_rank: A_s and F_s sizes differ");
    }
    if (n == 0) return LowRankFactor{CMatrix(0, 0), inst.f_sub};

    // Takagi factorisation through the real symmetric embedding
    // [[Re A, Im A], [Im A, -Re A]]: an eigenpair (s, [x; y]) with s > 0
    // gives A conj(u) = s u for u = x + i y.
    const Eigen::MatrixXd re = inst.a_sub.real();
    const Eigen::MatrixXd im = inst.a_sub.imag();
    Eigen::MatrixXd emb(2 * n, 2 * n);
    emb << re, im, im, -re;
    emb = 0.5 * (emb + emb.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(emb);
    const Eigen::VectorXd& vals = eig.eigenvalues();
    const double top = vals(2 * n - 1);

    std::vector<Index> kept;
    for (Index k = 2 * n - 1; k >= 0 && top > 0.0; --k) {
        if (vals(k) <= rel_tol * top) break;
        kept.push_back(k);
    }
    CMatrix g(n, static_cast<Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const Eigen::VectorXd v = eig.eigenvectors().col(kept[c]);
        const double s = std::sqrt(vals(kept[c]));
        for (Index r = 0; r < n; ++r) g(r, static_cast<Index>(c)) = Complex(v(r), v(n + r)) * s;
    }

    LowRankFactor out{std::move(g), inst.f_sub};
    const double residual = factor_residual(inst, out);
    if (residual > check_tol) {
        throw Error(ErrorCode::FactorMismatch,
                    "symmetric factorisation residual " + std::to_string(residual));
    }
    return out;
}

Complex loop_hafnian_low_rank(const LowRankFactor& factor) {
    const Index n = factor.size();
    const Index rank = factor.rank();
    if (factor.f_sub.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "loop_hafnian_low_rank: g and F_s sizes differ");
    }
    if (n == 0) return Complex{1.0, 0.0};

    // dense addressing of exponents in [0, n]^rank; only degree <= n is used
    std::int64_t cells = 1;
    for (Index k = 0; k < rank; ++k) {
        cells *= (n + 1);
        if (cells > kDefaultMaxStates) {
            throw Error(ErrorCode::DimensionTooLarge, "low-rank expansion too large");
        }
    }
    std::vector<std::int64_t> stride(static_cast<std::size_t>(rank), 1);
    for (Index k = 1; k < rank; ++k) stride[k] = stride[k - 1] * (n + 1);

    // monomials of total degree <= n, grouped by degree
    std::vector<std::vector<std::int64_t>> by_degree(static_cast<std::size_t>(n + 1));
    {
        std::vector<int> e(static_cast<std::size_t>(rank), 0);
        int deg = 0;
        std::int64_t pos = 0;
        while (true) {
            by_degree[deg].push_back(pos);
            Index k = 0;
            while (k < rank) {
                if (deg < n) {
                    ++e[k];
                    ++deg;
                    pos += stride[k];
                    break;
                }
                deg -= e[k];
                pos -= e[k] * stride[k];
                e[k] = 0;
                ++k;
            }
            if (k == rank) break;
        }
    }

    std::vector<int> exponent_of(static_cast<std::size_t>(cells * std::max<Index>(rank, 1)), 0);
    for (const auto& level : by_degree) {
        for (std::int64_t pos : level) {
            std::int64_t rem = pos;
            for (Index k = rank - 1; k >= 0; --k) {
                exponent_of[pos * rank + k] = static_cast<int>(rem / stride[k]);
                rem %= stride[k];
            }
        }
    }

    // coefficients of prod_j (f_j + sum_k g_jk y_k), one factor at a time;
    // updating from the highest degree down keeps the update in place
    std::vector<Complex> coeff(static_cast<std::size_t>(cells), Complex{});
    coeff[0] = Complex{1.0, 0.0};
    for (Index j = 0; j < n; ++j) {
        const Complex fj = factor.f_sub(j);
        for (Index d = j + 1; d >= 0; --d) {
            for (std::int64_t pos : by_degree[d]) {
                Complex v = fj * coeff[pos];
                for (Index k = 0; k < rank; ++k) {
                    if (exponent_of[pos * rank + k] > 0) v += factor.g(j, k) * coeff[pos - stride[k]];
                }
                coeff[pos] = v;
            }
        }
    }

    Complex total{};
    for (const auto& level : by_degree) {
        for (std::int64_t pos : level) {
            std::uint64_t weight = 1;
            bool even = true;
            for (Index k = 0; k < rank && even; ++k) {
                const int m = exponent_of[pos * rank + k];
                if (m % 2 != 0) {
                    even = false;
                } else {
                    weight = checked_mul(weight, double_factorial_odd(m));
                }
            }
            if (even) total += static_cast<double>(weight) * coeff[pos];
        }
    }
    return total;
}

Complex loop_hafnian_low_rank(const MatchingInstance& inst, const LowRankFactor& factor, double check_tol) {
    if (factor.size() != inst.size()) {
        throw Error(ErrorCode::FactorMismatch, "factor and instance dimensions differ");
    }
    const double residual = factor_residual(inst, factor);
    if (residual > check_tol) {
        throw Error(ErrorCode::FactorMismatch, "max|g g^T - A_s| = " + std::to_string(residual));
    }
    return loop_hafnian_low_rank(factor);
}

}  // namespace ngbs::hafnian
