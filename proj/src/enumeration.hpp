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

#pragma once

#include <cstdint>
#include <vector>

#include "ngbs/core.hpp"

namespace ngbs::hafnian::detail {

struct Branch {
    Complex weight;
    std::uint64_t mask;
};

// Depth-first sum over (loop) perfect matchings of the vertices in a bit
// mask: the lowest remaining vertex is looped or paired with each other
// remaining vertex in increasing order.
class MatchingEnumerator {
public:
    /// f == nullptr disables loops (plain hafnian).
    MatchingEnumerator(const CMatrix& a, const CVector* f);

    std::uint64_t full_mask() const noexcept {
        return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    }
    Complex sum(std::uint64_t mask) const;
    /// The first `depth` decisions expanded into independent subproblems,
    /// listed in the order sum() would visit them.
    std::vector<Branch> split(int depth) const;

private:
    int n_;
    bool loops_;
    std::vector<Complex> a_;
    std::vector<Complex> f_;
};

}  // namespace ngbs::hafnian::detail
