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

#include "ngbs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "ngbs/hafnian.hpp"
#include "ngbs/state_prep.hpp"

namespace ngbs::sampling {

namespace {

bool same_source(const SourceSpec& a, const SourceSpec& b) {
    return a.r == b.r && a.t == b.t && a.alphas == b.alphas;
}

void check_pattern(const Experiment& exp, const PhotonPattern& pattern) {
    if (static_cast<int>(pattern.size()) != exp.system_modes()) {
        throw Error(ErrorCode::InvalidArgument, "pattern length " + std::to_string(pattern.size()) +
                                                    " does not match " + std::to_string(exp.system_modes()) +
                                                    " interferometer modes");
    }
}

}  // namespace

gaussian::GaussianState assemble(const Experiment& exp) {
    exp.validate();
    const int m = exp.system_modes();
    const int free_modes = m - static_cast<int>(exp.sources.size());
    // initial order: [free vacuum modes, source 0 (system, heralds), source 1, ...]
    std::optional<gaussian::GaussianState> state;
    if (free_modes > 0) state = gaussian::GaussianState::vacuum(free_modes);
    for (const SourceSpec& s : exp.sources) {
        auto block = prep::build_source(s);
        state = state ? gaussian::direct_sum(*state, block) : std::move(block);
    }
    std::vector<int> order(static_cast<std::size_t>(exp.total_modes()), -1);
    std::vector<bool> taken(static_cast<std::size_t>(m), false);
    int offset = free_modes;
    int herald_slot = m;
    for (std::size_t k = 0; k < exp.sources.size(); ++k) {
        order[exp.wiring[k]] = offset;
        taken[exp.wiring[k]] = true;
        for (int h = 0; h < exp.sources[k].herald_count(); ++h) order[herald_slot++] = offset + 1 + h;
        offset += exp.sources[k].mode_count();
    }
    int vac = 0;
    for (int j = 0; j < m; ++j) {
        if (!taken[j]) order[j] = vac++;
    }
    return gaussian::permute_modes(*state, order);
}

gaussian::GaussianState propagate(const gaussian::GaussianState& state, const Experiment& exp) {
    std::vector<int> modes(static_cast<std::size_t>(exp.system_modes()));
    std::iota(modes.begin(), modes.end(), 0);
    return gaussian::apply_unitary(state, exp.interferometer, modes);
}

PreparedExperiment::PreparedExperiment(Experiment exp)
    : exp_(std::move(exp)), state_(propagate(assemble(exp_), exp_)), af_(gaussian::build_af(state_)) {
    for (std::size_t k = 0; k < exp_.sources.size(); ++k) {
        double p = -1.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (same_source(exp_.sources[j], exp_.sources[k])) {
                p = herald_probs_[j];
                break;
            }
        }
        if (p < 0.0) p = prep::herald_probability(prep::build_source(exp_.sources[k]));
        if (exp_.sources[k].herald_count() > 0 && p < kHeraldFloor) {
            throw Error(ErrorCode::HeraldImpossible,
                        "source " + std::to_string(k) + " herald probability " + std::to_string(p));
        }
        herald_probs_.push_back(p);
        log_weight_ += std::log(p);
    }
}

PhotonPattern PreparedExperiment::full_pattern(const PhotonPattern& system) const {
    check_pattern(exp_, system);
    std::vector<int> counts = system.counts;
    counts.resize(static_cast<std::size_t>(exp_.total_modes()), 1);
    return PhotonPattern(std::move(counts));
}

double joint_probability(const PreparedExperiment& prepared, const PhotonPattern& pattern) {
    return hafnian::probability(prepared.af(), prepared.full_pattern(pattern));
}

double joint_probability(const Experiment& exp, const PhotonPattern& pattern) {
    return joint_probability(PreparedExperiment(exp), pattern);
}

double conditional_probability(const PreparedExperiment& prepared, const PhotonPattern& pattern) {
    const double joint = joint_probability(prepared, pattern);
    const double log_w = prepared.log_herald_weight();
    if (log_w > std::log(kHeraldFloor)) return joint / std::exp(log_w);
    return joint > 0.0 ? std::exp(std::log(joint) - log_w) : 0.0;
}

double conditional_probability(const Experiment& exp, const PhotonPattern& pattern) {
    return conditional_probability(PreparedExperiment(exp), pattern);
}

double conditional_probability_absorbed(const PreparedExperiment& prepared, const PhotonPattern& pattern) {
    const PhotonPattern full = prepared.full_pattern(pattern);
    const double log_w = prepared.log_herald_weight();
    if (prepared.experiment().herald_modes() == 0 || log_w == 0.0) {
        return hafnian::probability(prepared.af(), full);
    }
    const Index dim = 2 * static_cast<Index>(full.total());
    if (dim == 0) {
        throw Error(ErrorCode::InvalidArgument, "absorbed form needs at least one detected photon");
    }
    const double c = hafnian::absorption_scale(log_w, dim);
    gaussian::AFPair scaled = prepared.af();
    scaled.a_matrix *= c * c;
    scaled.f_vector *= c;
    return hafnian::probability(scaled, full);
}

double conditional_probability_absorbed(const Experiment& exp, const PhotonPattern& pattern) {
    return conditional_probability_absorbed(PreparedExperiment(exp), pattern);
}

Distribution full_distribution(const PreparedExperiment& prepared, Execution exec) {
    const Experiment& exp = prepared.experiment();
    Distribution out;
    out.patterns = enumerate_patterns(exp.system_modes(), exp.cutoff);
    const auto count = static_cast<std::int64_t>(out.patterns.size());
    out.probabilities.assign(out.patterns.size(), 0.0);

    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < count; ++i) {
            out.probabilities[i] = conditional_probability_absorbed(prepared, out.patterns[i]);
        }
    } else {
        std::vector<std::exception_ptr> errors(out.patterns.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < count; ++i) {
            try {
                out.probabilities[i] = conditional_probability_absorbed(prepared, out.patterns[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    out.tail_mass = 1.0 - out.total();
    return out;
}

Distribution full_distribution(const Experiment& exp, Execution exec) {
    return full_distribution(PreparedExperiment(exp), exec);
}

std::vector<PhotonPattern> sample(const Distribution& dist, int count, std::uint64_t seed) {
    if (count < 0) throw Error(ErrorCode::InvalidArgument, "sample: negative count");
    std::vector<PhotonPattern> out;
    if (count == 0) return out;
    std::vector<double> cdf(dist.probabilities.size());
    std::partial_sum(dist.probabilities.begin(), dist.probabilities.end(), cdf.begin());
    const double mass = cdf.empty() ? 0.0 : cdf.back();
    if (!(mass > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample: distribution has no mass");

    std::mt19937_64 gen(seed);
    out.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * mass;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        out.push_back(dist.patterns[static_cast<std::size_t>(it - cdf.begin())]);
    }
    return out;
}

std::vector<PhotonPattern> sample(const Experiment& exp, int count, std::uint64_t seed) {
    if (count == 0) return {};
    return sample(full_distribution(exp, Execution::Serial), count, seed);
}

}  // namespace ngbs::sampling
