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

// ngbs command-line front end.
//
// Exit codes: 0 success, 2 configuration or usage error (nothing written),
// 3 numerical or verification failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "ngbs/config.hpp"
#include "ngbs/fock.hpp"
#include "ngbs/sampling.hpp"
#include "ngbs/state_prep.hpp"
#include "ngbs/validation.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

constexpr double kStrictOracleTolerance = 1e-6;
constexpr double kSelftestTolerance = 1e-7;

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<int> cutoff;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    bool oracle = false;
    bool strict = false;
    int count = 1000;
    std::vector<int> n_list{8, 10, 12, 14, 16};
    std::vector<int> rank_list{1, 2, 3};
    int trials = 3;
    bool no_loops = false;
};

/// Thrown for failures that map to exit code 2.
struct ConfigFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json complex_json(ngbs::Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<ngbs::Complex>& v) {
    json out = json::array();
    for (ngbs::Complex z : v) out.push_back(complex_json(z));
    return out;
}

struct Loaded {
    ngbs::config::ExperimentConfig config;
    ngbs::Experiment experiment;
};

Loaded load(const Options& opt) {
    if (opt.config_path.empty()) throw ConfigFailure("--config is required");
    try {
        Loaded out{ngbs::config::load(opt.config_path), {}};
        if (opt.cutoff) {
            if (*opt.cutoff < 0) throw ConfigFailure("--cutoff must be >= 0");
            out.config.cutoff = *opt.cutoff;
        }
        if (opt.seed) out.config.seed = *opt.seed;
        out.experiment = out.config.experiment();
        return out;
    } catch (const ngbs::Error& e) {
        throw ConfigFailure(e.what());
    }
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigFailure("cannot write '" + opt.out_path + "'");
    out << text;
}

int cmd_prepare(const Options& opt) {
    const Loaded in = load(opt);
    const auto targets = in.config.target_states();
    json report = json::object();
    json sources = json::array();
    for (std::size_t k = 0; k < in.experiment.sources.size(); ++k) {
        const ngbs::SourceSpec& spec = in.experiment.sources[k];
        const auto& target = targets[k];
        std::vector<ngbs::Complex> herald_amps;
        for (ngbs::Complex a : spec.alphas) herald_amps.push_back(ngbs::herald_amplitude(a, spec.t));

        const auto oracle = ngbs::fock::simulate_source(spec);
        const int levels = std::max(in.config.cutoff, target.degree());
        std::vector<ngbs::Complex> amps(oracle.system_state.begin(),
                                        oracle.system_state.begin() +
                                            std::min<std::ptrdiff_t>(levels + 1, oracle.system_state.size()));
        double kept = 0.0;
        for (ngbs::Complex z : amps) kept += std::norm(z);

        json src = json::object();
        src["index"] = k;
        src["mode"] = in.experiment.wiring[k];
        src["r"] = spec.r;
        src["t"] = spec.t;
        src["target_amplitudes"] = complex_list_json(target.amplitudes());
        src["alphas"] = complex_list_json(spec.alphas);
        src["herald_displacements"] = complex_list_json(herald_amps);
        src["herald_probability"] = ngbs::prep::herald_probability(ngbs::prep::build_source(spec));
        src["oracle_herald_probability"] = oracle.herald_probability;
        src["heralded_amplitudes"] = complex_list_json(amps);
        src["weight_above_levels"] = std::max(0.0, 1.0 - kept);
        src["fidelity"] = ngbs::prep::fidelity(spec, target);
        sources.push_back(src);
    }
    report["sources"] = sources;
    emit(opt, report.dump(2) + "\n");
    return kExitOk;
}

int cmd_probs(const Options& opt) {
    const Loaded in = load(opt);
    const ngbs::Distribution dist = ngbs::sampling::full_distribution(in.experiment);
    std::optional<ngbs::Distribution> oracle;
    if (opt.oracle) oracle = ngbs::fock::simulate_experiment(in.experiment, std::max(in.experiment.cutoff, 1));

    std::ostringstream out;
    out << "pattern\tprobability";
    if (oracle) out << "\toracle\tabs_diff";
    out << "\n";
    double max_diff = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        out << dist.patterns[i].to_string() << "\t" << fmt(dist.probabilities[i]);
        if (oracle) {
            const double diff = std::abs(dist.probabilities[i] - oracle->probabilities[i]);
            max_diff = std::max(max_diff, diff);
            out << "\t" << fmt(oracle->probabilities[i]) << "\t" << fmt(diff);
        }
        out << "\n";
    }
    if (oracle) {
        // the oracle enumerates at cutoff >= 1; its tail is measured on the common rows
        double common = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) common += oracle->probabilities[i];
        const double oracle_tail = 1.0 - common;
        out << "tail\t" << fmt(dist.tail_mass) << "\t" << fmt(oracle_tail) << "\t"
            << fmt(std::abs(dist.tail_mass - oracle_tail)) << "\n";
    } else {
        out << "tail\t" << fmt(dist.tail_mass) << "\n";
    }
    emit(opt, out.str());
    if (oracle && opt.strict && max_diff > kStrictOracleTolerance) {
        std::cerr << "oracle disagreement " << max_diff << " exceeds " << kStrictOracleTolerance << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_sample(const Options& opt) {
    if (opt.count < 0) throw ConfigFailure("--count must be >= 0");
    const Loaded in = load(opt);
    std::ostringstream out;
    for (const auto& p : ngbs::sampling::sample(in.experiment, opt.count, in.config.seed)) out << p.to_string() << "\n";
    emit(opt, out.str());
    return kExitOk;
}

int cmd_bench_rank(const Options& opt) {
    for (int n : opt.n_list) {
        if (n < 0 || n > ngbs::hafnian::kDefaultMaxDimension) {
            throw ConfigFailure("bench-rank: N must lie in [0, " +
                                std::to_string(ngbs::hafnian::kDefaultMaxDimension) + "]");
        }
    }
    for (int r : opt.rank_list) {
        if (r < 1) throw ConfigFailure("bench-rank: R must be >= 1");
    }
    if (opt.trials < 1) throw ConfigFailure("bench-rank: --trials must be >= 1");
    const std::uint64_t seed = opt.seed.value_or(0);

    std::ostringstream out;
    out << "n\trank\tenumeration_s\tlow_rank_s\tspeedup\tresidual\n";
    for (int r : opt.rank_list) {
        for (int n : opt.n_list) {
            const auto row = ngbs::validation::time_rank_instance(n, r, opt.trials, seed + 1000 * r + n, !opt.no_loops);
            const double speedup = row.low_rank_seconds > 0.0 ? row.enumeration_seconds / row.low_rank_seconds
                                                               : std::numeric_limits<double>::infinity();
            out << n << "\t" << r << "\t" << fmt(row.enumeration_seconds) << "\t" << fmt(row.low_rank_seconds) << "\t"
                << fmt(speedup) << "\t" << fmt(row.residual) << "\n";
        }
    }
    emit(opt, out.str());
    return kExitOk;
}

int cmd_selftest(const Options& opt) {
    std::ostringstream out;
    bool ok = true;
    out << "case\ttotal_variation\tmax_abs_diff\tstatus\n";
    for (const auto& c : ngbs::validation::standard_oracle_suite()) {
        const auto cmp = ngbs::validation::compare_with_oracle(c.experiment);
        const bool pass = cmp.total_variation <= kSelftestTolerance;
        ok = ok && pass;
        out << c.name << "\t" << fmt(cmp.total_variation) << "\t" << fmt(cmp.max_abs_diff) << "\t"
            << (pass ? "ok" : "FAIL") << "\n";
    }
    emit(opt, out.str());
    return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heralded non-Gaussian boson sampling: state preparation, exact probabilities and samples"};
    app.require_subcommand(1);
    Options opt;

    const auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", opt.threads, "OpenMP thread count")->check(CLI::PositiveNumber);
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", opt.out_path, "output file (default: stdout)");
        sub->add_option("--cutoff", opt.cutoff, "override the config cutoff");
        add_threads(sub);
    };

    CLI::App* prepare = app.add_subcommand("prepare", "per-source displacements, herald probability, fidelity");
    add_common(prepare);

    CLI::App* probs = app.add_subcommand("probs", "conditional probability table");
    add_common(probs);
    probs->add_flag("--oracle", opt.oracle, "add the Fock-space oracle column");
    probs->add_flag("--strict", opt.strict, "exit 3 if the oracle differs by more than 1e-6");

    CLI::App* sample = app.add_subcommand("sample", "draw patterns from the conditional distribution");
    add_common(sample);
    sample->add_option("--count", opt.count, "number of samples");
    sample->add_option("--seed", opt.seed, "override the config seed");

    CLI::App* bench = app.add_subcommand("bench-rank", "enumeration vs low-rank loop Hafnian timings");
    bench->add_option("--n", opt.n_list, "instance dimensions")->delimiter(',');
    bench->add_option("--rank", opt.rank_list, "ranks")->delimiter(',');
    bench->add_option("--trials", opt.trials, "timing repetitions (best is kept)");
    bench->add_option("--seed", opt.seed, "instance seed");
    bench->add_flag("--no-loops", opt.no_loops, "set the loop weights to zero");
    bench->add_option("--out", opt.out_path, "output file (default: stdout)");
    add_threads(bench);

    CLI::App* selftest = app.add_subcommand("selftest", "compare the pipeline with the Fock oracle on the built-in suite");
    selftest->add_option("--out", opt.out_path, "output file (default: stdout)");
    add_threads(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    if (opt.threads) omp_set_num_threads(*opt.threads);

    try {
        if (*prepare) return cmd_prepare(opt);
        if (*probs) return cmd_probs(opt);
        if (*sample) return cmd_sample(opt);
        if (*bench) return cmd_bench_rank(opt);
        if (*selftest) return cmd_selftest(opt);
    } catch (const ConfigFailure& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
