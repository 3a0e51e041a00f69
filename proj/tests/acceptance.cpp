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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ngbs/gaussian.hpp"
#include "ngbs/hafnian.hpp"
#include "ngbs/sampling.hpp"
#include "ngbs/state_prep.hpp"
#include "ngbs/validation.hpp"

namespace fs = std::filesystem;
using namespace ngbs;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto suite = validation::standard_oracle_suite();
    double worst = 0.0;
    for (const auto& c : suite) worst = std::max(worst, validation::compare_with_oracle(c.experiment).total_variation);
    const double elapsed = seconds_since(t0);
    return {suite.size() >= 12 && worst <= 1e-7 && elapsed <= 300.0,
            "max TV " + sci(worst) + " over " + std::to_string(suite.size()) + " configurations in " + sci(elapsed) +
                " s"};
}

Outcome scaling_absorption() {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> log_p(std::log(1e-4), 0.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 10;
        const int k = 1 + i % 3;
        const double p = std::exp(log_p(gen));
        const auto inst = validation::random_instance(n, 5000 + i);
        const Complex lhs = hafnian::loop_hafnian(hafnian::scale_absorb(inst, p, k));
        worst = std::max(worst, rel(lhs, std::pow(p, -k) * hafnian::loop_hafnian(inst)));
    }
    return {worst <= 1e-9, "max relative error " + sci(worst) + " over 100 instances"};
}

Outcome homogeneity() {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 10;
        const Complex c(normal(gen), normal(gen));
        const auto inst = validation::random_instance(n, 6000 + i);
        const hafnian::MatchingInstance scaled{c * c * inst.a_sub, c * inst.f_sub};
        worst = std::max(worst, rel(hafnian::loop_hafnian(scaled), std::pow(c, n) * hafnian::loop_hafnian(inst)));
    }
    return {worst <= 1e-9, "max relative error " + sci(worst) + " over 100 instances"};
}

Outcome low_rank_correctness() {
    double worst = 0.0;
    int count = 0;
    for (int rank = 1; rank <= 3; ++rank) {
        for (int n = 1; n <= 12; ++n) {
            const auto inst = validation::random_low_rank_instance(n, rank, 7000 + 100 * rank + n);
            const Complex low = hafnian::loop_hafnian_low_rank(hafnian::factorize_low_rank(inst));
            worst = std::max(worst, rel(low, hafnian::loop_hafnian(inst)));
            ++count;
        }
    }
    bool exact = true;
    for (int n : {2, 4, 6, 8, 10}) {
        std::uint64_t dfact = 1;
        for (int k = n - 1; k > 1; k -= 2) dfact *= static_cast<std::uint64_t>(k);
        const Complex h = hafnian::hafnian(CMatrix::Ones(n, n));
        const Complex l = hafnian::loop_hafnian_low_rank(hafnian::LowRankFactor{CMatrix::Ones(n, 1), CVector::Zero(n)});
        exact = exact && h.imag() == 0.0 && static_cast<std::uint64_t>(h.real()) == dfact &&
                static_cast<double>(dfact) == h.real() && l.real() == h.real() && l.imag() == 0.0;
    }
    return {worst <= 1e-8 && exact, "max relative error " + sci(worst) + " over " + std::to_string(count) +
                                        " instances; all-ones (N-1)!! " + (exact ? "exact" : "MISMATCH")};
}

Outcome low_rank_speed() {
    const auto row = validation::time_rank_instance(16, 1, 3, 8016);
    const double speedup = row.enumeration_seconds / std::max(row.low_rank_seconds, 1e-9);
    return {speedup >= 10.0 && row.residual <= 1e-8,
            "N=16 R=1 enumeration " + sci(row.enumeration_seconds) + " s, low-rank " + sci(row.low_rank_seconds) +
                " s, speedup " + sci(speedup) + "x"};
}

Outcome hom_regression() {
    Experiment exp;
    const auto spec = prep::source_for_target(prep::TargetState::single_photon(), 0.5, 0.999);
    exp.sources = {spec, spec};
    exp.interferometer = CMatrix(2, 2);
    const double h = std::sqrt(0.5);
    exp.interferometer << h, h, -h, h;
    exp.wiring = {0, 1};
    exp.cutoff = 4;
    const sampling::PreparedExperiment prepared(exp);
    const double p11 = sampling::conditional_probability(prepared, PhotonPattern{1, 1});
    const double p20 = sampling::conditional_probability(prepared, PhotonPattern{2, 0});
    const double p02 = sampling::conditional_probability(prepared, PhotonPattern{0, 2});
    return {p11 <= 1e-3 && std::abs(p20 - p02) <= 1e-9,
            "Pr[1,1] = " + sci(p11) + ", |Pr[2,0] - Pr[0,2]| = " + sci(std::abs(p20 - p02))};
}

Outcome fidelity_claim() {
    using prep::TargetState;
    const std::vector<std::pair<std::string, TargetState>> targets{
        {"|1>", TargetState::single_photon()},
        {"|2>", TargetState::fock(2)},
        {"(|0>+|2>)/sqrt2", TargetState::from_amplitudes({1.0, 0.0, 1.0})}};
    bool ok = true;
    std::string detail;
    for (const auto& [name, target] : targets) {
        const double lo = prep::fidelity(prep::source_for_target(target, 0.5, 0.9), target);
        const double hi = prep::fidelity(prep::source_for_target(target, 0.5, 0.999), target);
        ok = ok && hi > 0.99 && hi > lo;
        detail += (detail.empty() ? "" : "; ") + name + " " + sci(lo) + " -> " + std::to_string(hi);
    }
    return {ok, detail};
}

Outcome parity_and_normalization() {
    double odd = 0.0;
    for (double r : {0.3, 0.8}) {
        const auto af = gaussian::build_af(gaussian::squeeze(gaussian::GaussianState::vacuum(1), 0, r));
        for (int n = 1; n <= 11; n += 2) odd = std::max(odd, hafnian::probability(af, PhotonPattern{n}));
    }
    auto multi = gaussian::GaussianState::vacuum(3);
    for (int m = 0; m < 3; ++m) multi = gaussian::squeeze(multi, m, 0.2 + 0.2 * m);
    const std::vector<int> modes{0, 1, 2};
    const auto af3 = gaussian::build_af(gaussian::apply_unitary(multi, validation::random_unitary(3, 5), modes));
    for (const auto& p : enumerate_patterns(3, 5)) {
        if (p.total() % 2) odd = std::max(odd, hafnian::probability(af3, p));
    }

    // the reported tail must cover the mass found two photons further out
    double worst = 0.0;
    for (const auto& c : validation::standard_oracle_suite()) {
        const auto dist = sampling::full_distribution(c.experiment);
        Experiment wider = c.experiment;
        wider.cutoff += 2;
        const auto outer = sampling::full_distribution(wider);
        double shell = 0.0;
        for (std::size_t i = 0; i < outer.size(); ++i) {
            if (outer.patterns[i].total() > c.experiment.cutoff) shell += outer.probabilities[i];
        }
        worst = std::max({worst, dist.total() - 1.0, shell - dist.tail_mass});
    }
    return {odd <= 1e-12 && worst <= 1e-9,
            "max odd-photon probability " + sci(odd) + "; max normalisation excess " + sci(std::max(worst, 0.0))};
}

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const fs::path dir = fs::path(NGBS_SCRATCH_DIR) / "acceptance_scratch";
    fs::create_directories(dir);
    const fs::path a = dir / "first.txt";
    const fs::path b = dir / "second.txt";
    fs::remove(a);
    fs::remove(b);
    const std::string base = std::string(NGBS_CLI_PATH) + " sample --config " + NGBS_CONFIG_DIR +
                             "/mixed_dft3.json --count 2000 --seed 99 --out ";
    const int ea = run(base + a.string());
    const int eb = run(base + b.string());
    const std::string sa = slurp(a);
    const std::string sb = slurp(b);
    return {ea == 0 && eb == 0 && !sa.empty() && sa == sb,
            "exit codes " + std::to_string(ea) + "/" + std::to_string(eb) + ", " + std::to_string(sa.size()) +
                " bytes, " + (sa == sb ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"scaling-absorption identity", scaling_absorption},
        {"homogeneity law", homogeneity},
        {"low-rank correctness", low_rank_correctness},
        {"low-rank speed", low_rank_speed},
        {"HOM regression", hom_regression},
        {"fidelity approaches unity", fidelity_claim},
        {"parity and normalisation", parity_and_normalization},
        {"sampling determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        failures += out.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
