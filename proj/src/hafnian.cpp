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

#include "ngbs/hafnian.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <functional>
#include <string>
#include <vector>

#include "enumeration.hpp"

namespace ngbs::hafnian {

namespace {

void check_dimension(Index n, int max_dimension) {
    if (n > max_dimension || n > 63) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "matching enumeration dimension " + std::to_string(n) + " exceeds cap " +
                        std::to_string(max_dimension));
    }
}

}  // namespace

namespace detail {

MatchingEnumerator::MatchingEnumerator(const CMatrix& a, const CVector* f)
    : n_(static_cast<int>(a.rows())), loops_(f != nullptr), a_(a.size()), f_(a.rows()) {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) a_[i * n_ + j] = a(i, j);
        f_[i] = loops_ ? (*f)(i) : Complex{};
    }
}

Complex MatchingEnumerator::sum(std::uint64_t mask) const {
    if (mask == 0) return Complex{1.0, 0.0};
    const int i = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    Complex acc = loops_ ? f_[i] * sum(rest) : Complex{};
    const Complex* row = a_.data() + static_cast<std::size_t>(i) * n_;
    for (std::uint64_t r = rest; r != 0; r &= r - 1) {
        const int j = std::countr_zero(r);
        acc += row[j] * sum(rest & ~(std::uint64_t{1} << j));
    }
    return acc;
}

std::vector<Branch> MatchingEnumerator::split(int depth) const {
    std::vector<Branch> frontier{{Complex{1.0, 0.0}, full_mask()}};
    for (int level = 0; level < depth; ++level) {
        std::vector<Branch> next;
        for (const Branch& b : frontier) {
            if (b.mask == 0) {
                next.push_back(b);
                continue;
            }
            const int i = std::countr_zero(b.mask);
            const std::uint64_t rest = b.mask & (b.mask - 1);
            if (loops_) next.push_back({b.weight * f_[i], rest});
            for (std::uint64_t r = rest; r != 0; r &= r - 1) {
                const int j = std::countr_zero(r);
                next.push_back({b.weight * a_[i * n_ + j], rest & ~(std::uint64_t{1} << j)});
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

}  // namespace detail

MatchingInstance submatrix_for_pattern(const gaussian::AFPair& af, const PhotonPattern& pattern) {
    const int m = af.mode_count();
    if (static_cast<int>(pattern.size()) != m) {
        throw Error(ErrorCode::InvalidArgument, "submatrix_for_pattern: pattern length must equal mode count");
    }
    std::vector<Index> rows;
    for (int j = 0; j < m; ++j) rows.insert(rows.end(), pattern[j], j);
    for (int j = 0; j < m; ++j) rows.insert(rows.end(), pattern[j], m + j);

    const Index n = static_cast<Index>(rows.size());
    MatchingInstance inst{CMatrix(n, n), CVector(n)};
    for (Index a = 0; a < n; ++a) {
        inst.f_sub(a) = af.f_vector(rows[a]);
        for (Index b = 0; b < n; ++b) inst.a_sub(a, b) = af.a_matrix(rows[a], rows[b]);
    }
    return inst;
}

Complex hafnian(const CMatrix& a, int max_dimension) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::InvalidArgument, "hafnian: matrix must be square");
    }
    check_dimension(a.rows(), max_dimension);
    if (a.rows() % 2 != 0) return Complex{};
    const detail::MatchingEnumerator e(a, nullptr);
    return e.sum(e.full_mask());
}

Complex loop_hafnian(const MatchingInstance& inst, int max_dimension) {
    check_dimension(inst.size(), max_dimension);
    const detail::MatchingEnumerator e(inst.a_sub, &inst.f_sub);
    return e.sum(e.full_mask());
}

Complex loop_hafnian_repeated(const CMatrix& a, const CVector& f, std::span<const Index> idx,
                              std::span<const int> multiplicity, std::int64_t max_states) {
    if (idx.size() != multiplicity.size()) {
        throw Error(ErrorCode::InvalidArgument, "loop_hafnian_repeated: index and multiplicity lengths differ");
    }
    const std::size_t len = idx.size();
    std::vector<std::int64_t> stride(len + 1, 1);
    for (std::size_t k = 0; k < len; ++k) {
        if (multiplicity[k] < 0) {
            throw Error(ErrorCode::InvalidArgument, "loop_hafnian_repeated: negative multiplicity");
        }
        stride[k + 1] = stride[k] * (multiplicity[k] + 1);
        if (stride[k + 1] > max_states) {
            throw Error(ErrorCode::DimensionTooLarge, "loop_hafnian_repeated: state space exceeds " +
                                                          std::to_string(max_states));
        }
    }
    const std::int64_t states = stride[len];

    // pull the touched entries into a dense local block
    std::vector<Complex> aa(len * len), ff(len);
    for (std::size_t p = 0; p < len; ++p) {
        ff[p] = f(idx[p]);
        for (std::size_t q = 0; q < len; ++q) aa[p * len + q] = a(idx[p], idx[q]);
    }

    std::vector<Complex> value(static_cast<std::size_t>(states));
    std::vector<int> digit(len, 0);
    value[0] = Complex{1.0, 0.0};
    for (std::int64_t s = 1; s < states; ++s) {
        for (std::size_t k = 0; k < len; ++k) {
            if (++digit[k] <= multiplicity[k]) break;
            digit[k] = 0;
        }
        std::size_t i = 0;
        while (digit[i] == 0) ++i;
        const std::int64_t base = s - stride[i];
        Complex v = ff[i] * value[base];
        if (digit[i] >= 2) {
            v += static_cast<double>(digit[i] - 1) * aa[i * len + i] * value[base - stride[i]];
        }
        for (std::size_t k = i + 1; k < len; ++k) {
            if (digit[k] > 0) {
                v += static_cast<double>(digit[k]) * aa[i * len + k] * value[base - stride[k]];
            }
        }
        value[s] = v;
    }
    return value[states - 1];
}

namespace {

struct PatternIndices {
    std::vector<Index> idx;
    std::vector<int> mult;
};

PatternIndices pattern_indices(int modes, const PhotonPattern& pattern) {
    if (static_cast<int>(pattern.size()) != modes) {
        throw Error(ErrorCode::InvalidArgument, "pattern length must equal mode count");
    }
    PatternIndices out;
    for (int j = 0; j < modes; ++j) {
        if (pattern[j] > 0) {
            out.idx.push_back(j);
            out.mult.push_back(pattern[j]);
        }
    }
    for (int j = 0; j < modes; ++j) {
        if (pattern[j] > 0) {
            out.idx.push_back(modes + j);
            out.mult.push_back(pattern[j]);
        }
    }
    return out;
}

}  // namespace

Complex loop_hafnian_for_pattern(const gaussian::AFPair& af, const PhotonPattern& pattern,
                                 std::int64_t max_states) {
    const auto pi = pattern_indices(af.mode_count(), pattern);
    return loop_hafnian_repeated(af.a_matrix, af.f_vector, pi.idx, pi.mult, max_states);
}

double absorption_scale(double log_weight, Index dimension) {
    return std::exp(-log_weight / static_cast<double>(dimension));
}

MatchingInstance scale_absorb(const MatchingInstance& inst, double p, int k) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::InvalidP, "scale_absorb: p must lie in (0, 1], got " + std::to_string(p));
    }
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument, "scale_absorb: K must be positive");
    }
    const Index n = inst.size();
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "scale_absorb: empty instance cannot absorb a weight");
    }
    const double c = p < 1e-6 ? absorption_scale(k * std::log(p), n)
                               : std::pow(p, -static_cast<double>(k) / static_cast<double>(n));
    return MatchingInstance{inst.a_sub * (c * c), inst.f_sub * c};
}

double finalize_probability(Complex lhaf, double scale, double lhaf_abs_bound) {
    const double re = lhaf.real();
    const double im = std::abs(lhaf.imag());
    // an imaginary part is only an error if it would matter at probability scale
    if (im > 1e-8 * std::abs(lhaf) + 1e-12 * lhaf_abs_bound && std::abs(scale) * im > kProbabilityNoiseFloor) {
        std::ostringstream msg;
        msg << "loop Hafnian has imaginary part " << lhaf.imag() << " for real part " << re
            << " (absolute bound " << lhaf_abs_bound << ")";
        throw Error(ErrorCode::ImaginaryResidual, msg.str());
    }
    const double p = scale * re;
    if (p < -1e-9) {
        throw Error(ErrorCode::NegativeProbability, "probability " + std::to_string(p));
    }
    return p < 0.0 ? 0.0 : p;
}

double probability(const gaussian::AFPair& af, const PhotonPattern& pattern) {
    const auto pi = pattern_indices(af.mode_count(), pattern);
    const Complex lhaf = loop_hafnian_repeated(af.a_matrix, af.f_vector, pi.idx, pi.mult);
    double bound = 0.0;
    if (std::abs(lhaf.imag()) > 1e-8 * std::abs(lhaf)) {
        const CMatrix a_abs = af.a_matrix.cwiseAbs().cast<Complex>();
        const CVector f_abs = af.f_vector.cwiseAbs().cast<Complex>();
        bound = loop_hafnian_repeated(a_abs, f_abs, pi.idx, pi.mult).real();
    }
    return finalize_probability(lhaf, af.prefactor.value() / pattern.factorial_product(), bound);
}

}  // namespace ngbs::hafnian
