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

#include "ngbs/types.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace ngbs {

PhotonPattern::PhotonPattern(std::vector<int> c) : counts(std::move(c)) {
    for (int n : counts) {
        if (n < 0) {
            throw Error(ErrorCode::InvalidArgument, "photon counts must be non-negative");
        }
    }
}

int PhotonPattern::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

double PhotonPattern::factorial_product() const {
    double out = 1.0;
    for (int n : counts) {
        out *= std::tgamma(n + 1.0);
    }
    return out;
}

std::string PhotonPattern::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) os << ' ';
        os << counts[i];
    }
    return os.str();
}

std::vector<PhotonPattern> enumerate_patterns(int modes, int cutoff) {
    if (modes < 0 || cutoff < 0) {
        throw Error(ErrorCode::InvalidArgument, "enumerate_patterns: negative size");
    }
    std::vector<PhotonPattern> out;
    std::vector<int> counts(static_cast<std::size_t>(modes), 0);
    if (modes == 0) {
        out.emplace_back(counts);
        return out;
    }
    // odometer with the first digit fastest; a digit overflows once the
    // running total would exceed the cutoff
    int total = 0;
    while (true) {
        out.emplace_back(counts);
        int pos = 0;
        while (pos < modes) {
            if (total < cutoff) {
                ++counts[pos];
                ++total;
                break;
            }
            total -= counts[pos];
            counts[pos] = 0;
            ++pos;
        }
        if (pos == modes) break;
    }
    return out;
}

void SourceSpec::validate() const {
    if (!alphas.empty() && !(t > 0.0 && t < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "source transmission must lie in (0, 1)");
    }
    if (!std::isfinite(r)) {
        throw Error(ErrorCode::InvalidArgument, "source squeezing must be finite");
    }
}

Complex herald_amplitude(Complex alpha, double t) {
    return -alpha * std::sqrt((1.0 - t) / t);
}

int Experiment::herald_modes() const noexcept {
    int n = 0;
    for (const auto& s : sources) n += s.herald_count();
    return n;
}

void Experiment::validate() const {
    const int m = system_modes();
    if (interferometer.rows() != interferometer.cols() || m < 1) {
        throw Error(ErrorCode::InvalidArgument, "interferometer must be a non-empty square matrix");
    }
    const double defect = unitarity_defect(interferometer);
    if (defect > 1e-10) {
        throw Error(ErrorCode::NonUnitary,
                    "interferometer defect max|U^dag U - I| = " + std::to_string(defect));
    }
    if (sources.size() > static_cast<std::size_t>(m)) {
        throw Error(ErrorCode::WiringConflict, "more sources than interferometer modes");
    }
    if (wiring.size() != sources.size()) {
        throw Error(ErrorCode::WiringConflict, "wiring must name one input mode per source");
    }
    std::set<int> seen;
    for (int w : wiring) {
        if (w < 0 || w >= m || !seen.insert(w).second) {
            throw Error(ErrorCode::WiringConflict,
                        "wiring index " + std::to_string(w) + " out of range or repeated");
        }
    }
    if (cutoff < 0) {
        throw Error(ErrorCode::InvalidArgument, "cutoff must be non-negative");
    }
    for (const auto& s : sources) s.validate();
}

double Distribution::total() const noexcept {
    return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

double total_variation(const Distribution& p, const Distribution& q) {
    if (p.patterns != q.patterns) {
        throw Error(ErrorCode::InvalidArgument, "total_variation: pattern lists differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p.probabilities[i] - q.probabilities[i]);
    return 0.5 * acc;
}

}  // namespace ngbs
