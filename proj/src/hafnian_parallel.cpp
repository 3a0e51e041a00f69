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

#include <string>

#include <omp.h>

#include "enumeration.hpp"
#include "ngbs/hafnian.hpp"

namespace ngbs::hafnian {

namespace {

Complex parallel_sum(const detail::MatchingEnumerator& e) {
    const std::vector<detail::Branch> branches = e.split(2);
    std::vector<Complex> partial(branches.size());
    const auto count = static_cast<std::int64_t>(branches.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < count; ++b) {
        partial[b] = branches[b].weight * e.sum(branches[b].mask);
    }
    // fixed summation order regardless of thread count
    Complex total{};
    for (const Complex& v : partial) total += v;
    return total;
}

void check_parallel_dimension(Index n, int max_dimension) {
    if (n > max_dimension || n > 63) {
        throw Error(ErrorCode::DimensionTooLarge, "matching enumeration dimension " + std::to_string(n) +
                                                      " exceeds cap " + std::to_string(max_dimension));
    }
}

}  // namespace

Complex hafnian_parallel(const CMatrix& a, int max_dimension) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::InvalidArgument, "hafnian: matrix must be square");
    }
    check_parallel_dimension(a.rows(), max_dimension);
    if (a.rows() % 2 != 0) return Complex{};
    return parallel_sum(detail::MatchingEnumerator(a, nullptr));
}

Complex loop_hafnian_parallel(const MatchingInstance& inst, int max_dimension) {
    check_parallel_dimension(inst.size(), max_dimension);
    return parallel_sum(detail::MatchingEnumerator(inst.a_sub, &inst.f_sub));
}

}  // namespace ngbs::hafnian
