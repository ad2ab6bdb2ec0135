// Copyright 2026 The pudisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <variant>
#include <vector>

#include "doctest.h"
#include "pudisc/errors.hpp"
#include "pudisc/montecarlo.hpp"

using namespace pudisc;

namespace {

ExperimentConfig antipodal(double eta, double dark = 0.0, double vis = 1.0) {
    auto cfg = make_two_state_config({1.0, 0.0}, {-1.0, 0.0}, 0.5, DetectorModel{eta, dark},
                                     InterferenceModel{vis});
    return cfg;
}

}  // namespace

TEST_CASE("binomial_stderr") {
    CHECK(binomial_stderr(0.5, 100) == doctest::Approx(0.05));
    CHECK(binomial_stderr(0.0, 1000) == 0.0);
    CHECK(binomial_stderr(0.5067, 1000000) == doctest::Approx(5.0e-4).epsilon(1e-3));
    CHECK_THROWS_AS(binomial_stderr(1.5, 10), DomainError);
    CHECK_THROWS_AS(binomial_stderr(0.5, 0), DomainError);
}

TEST_CASE("configuration validation") {
    auto cfg = antipodal(0.53);
    CHECK_NOTHROW(cfg.validate());

    auto bad = cfg;
    bad.priors = {0.7, 0.2};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.priors = {-0.1, 1.1};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.detectors.pop_back();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.trials_per_block = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.blocks = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.trials_per_block = 1ULL << 62;
    bad.blocks = 8;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.programs.push_back({0.0, 0.0});
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = cfg;
    bad.stabilizer.enabled = true;
    bad.stabilizer.probe_trials = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    // 2^63 trials fit the counters.
    bad = cfg;
    bad.trials_per_block = 1ULL << 60;
    bad.blocks = 8;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("run_trial: the matching port never clicks without imperfections") {
    auto cfg = antipodal(0.53);
    cfg.priors = {1.0, 0.0};
    for (std::uint64_t i = 0; i < 20000; ++i) {
        const auto t = run_trial(cfg, i);
        REQUIRE(t.truth == 0);
        const bool allowed = std::holds_alternative<InconclusiveNoClick>(t.outcome) ||
                             t.outcome == Outcome{Identified{0}};
        REQUIRE(allowed);
    }
}

TEST_CASE("run_trial: identical states only click on dark counts") {
    const double dark = 0.05;
    auto cfg = make_two_state_config({0.8, 0.3}, {0.8, 0.3}, 0.5, DetectorModel{0.53, dark});
    const std::uint64_t n = 200000;
    std::uint64_t no_click = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        no_click += std::holds_alternative<InconclusiveNoClick>(run_trial(cfg, i).outcome);
    }
    const double p_dark = 1.0 - std::exp(-dark);
    const double expect = (1.0 - p_dark) * (1.0 - p_dark);
    CHECK(std::abs(no_click / static_cast<double>(n) - expect) <
          4.0 * binomial_stderr(expect, n));
}

TEST_CASE("run_trial is a pure function of (seed, trial_index)") {
    auto cfg = antipodal(0.53, 1e-3, 0.9);
    cfg.seed = 77;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto a = run_trial(cfg, i);
        const auto b = run_trial(cfg, i);
        REQUIRE(a.truth == b.truth);
        REQUIRE(a.outcome == b.outcome);
    }
    auto other = cfg;
    other.seed = 78;
    int differ = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        differ += run_trial(cfg, i).truth != run_trial(other, i).truth;
    }
    CHECK(differ > 300);
}

TEST_CASE("Counts bookkeeping") {
    Counts c(2);
    c.add({0, Identified{0}});
    c.add({0, Erroneous{1, 0}});
    c.add({1, InconclusiveNoClick{}});
    c.add({1, InconclusiveMultiClick{}});
    c.add({1, Identified{1}});
    CHECK(c.c_plus == std::vector<std::uint64_t>{1, 1});
    CHECK(c.c_minus == std::vector<std::uint64_t>{1, 0});
    CHECK(c.no_clicks == 1);
    CHECK(c.double_clicks == 1);
    CHECK(c.c_tot == 5);
    CHECK(c.consistent());
    Counts d = c;
    d += c;
    CHECK(d.c_tot == 10);
    CHECK(d.conclusive() == 6);
    CHECK(d.consistent());
    CHECK_THROWS_AS(d += Counts(3), InvariantError);
}

TEST_CASE("make_fractions uses the block spread") {
    // Two blocks of 10 trials with 2 and 4 correct identifications of program 1.
    Counts b1(2), b2(2);
    b1.c_plus[0] = 2;
    b1.no_clicks = 8;
    b1.c_tot = 10;
    b2.c_plus[0] = 4;
    b2.no_clicks = 6;
    b2.c_tot = 10;
    Counts pooled = b1;
    pooled += b2;
    const std::vector<Counts> blocks = {b1, b2};
    const Fractions f = make_fractions(blocks, pooled);
    CHECK(f.p_plus[0] == doctest::Approx(0.3));
    CHECK(f.p_inconclusive == doctest::Approx(0.7));
    // sample sd of {0.2, 0.4} is sqrt(0.02); over sqrt(2) -> 0.1
    CHECK(f.stderr_plus[0] == doctest::Approx(0.1));
    CHECK(f.stderr_inconclusive == doctest::Approx(0.1));
    CHECK(f.stderr_minus[0] == 0.0);

    // A single block falls back to the binomial error.
    const std::vector<Counts> one = {b1};
    CHECK(make_fractions(one, b1).stderr_plus[0] == doctest::Approx(binomial_stderr(0.2, 10)));
}

TEST_CASE("run_experiment: partition, unambiguity and convergence") {
    auto cfg = antipodal(0.53);
    cfg.trials_per_block = 100000;
    cfg.blocks = 10;
    cfg.seed = 2026;
    const auto r = run_experiment(cfg);

    REQUIRE(r.blocks.size() == 10);
    CHECK(r.pooled.c_tot == 1000000);
    CHECK(r.pooled.consistent());
    for (const auto& b : r.blocks) {
        CHECK(b.consistent());
    }
    const Fractions& f = r.fractions;
    const double total = f.conclusive() + f.p_inconclusive;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f.p_minus[0] == 0.0);
    CHECK(f.p_minus[1] == 0.0);

    const double expect = 1.0 - std::exp(-0.53 * 4.0 / 3.0);
    CHECK(expected_conclusive(cfg) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(f.conclusive() - expect) < 3.0 * binomial_stderr(expect, r.pooled.c_tot));

    // Symmetric network: both programs are identified equally often.
    const double combined = std::hypot(f.stderr_plus[0], f.stderr_plus[1]);
    CHECK(std::abs(f.p_plus[0] - f.p_plus[1]) < 4.0 * combined);
}

TEST_CASE("run_experiment does not depend on the worker count") {
    auto cfg = antipodal(0.53, 1e-3, 0.95);
    cfg.trials_per_block = 150000;
    cfg.blocks = 3;
    cfg.seed = 5;
    cfg.drift.sigma = 0.05;
    cfg.stabilizer.enabled = true;
    cfg.stabilizer.probe_trials = 2000;
    const auto one = run_experiment(cfg, RunOptions{1});
    const auto many = run_experiment(cfg, RunOptions{8});
    CHECK(one.pooled == many.pooled);
    for (std::size_t b = 0; b < one.blocks.size(); ++b) {
        CHECK(one.blocks[b] == many.blocks[b]);
    }
    CHECK(one.phase_trace == many.phase_trace);
}

TEST_CASE("probe pulses do not enter the measurement counts") {
    auto cfg = antipodal(0.53, 0.0, 0.98);
    cfg.trials_per_block = 1000;
    cfg.blocks = 4;
    cfg.drift.sigma = 0.05;
    cfg.stabilizer.enabled = true;
    cfg.stabilizer.probe_trials = 500;
    const auto a = run_experiment(cfg, RunOptions{1});
    cfg.stabilizer.probe_trials = 5000;
    const auto b = run_experiment(cfg, RunOptions{1});
    CHECK(a.pooled.c_tot == 4000);
    CHECK(b.pooled.c_tot == 4000);
    CHECK(a.probe_pulses == 4 * 2 * 2 * 500);
    CHECK(b.probe_pulses == 4 * 2 * 2 * 5000);
}

TEST_CASE("N-state engine with n=2 reproduces the two-program engine") {
    const std::vector<ComplexAmplitude> programs = {{0.9, 0.2}, {-0.4, 0.7}};
    auto two = make_two_state_config(programs[0], programs[1], 0.5, DetectorModel{0.53, 4e-7},
                                     InterferenceModel{0.98});
    auto n = make_nstate_config(programs, DetectorModel{0.53, 4e-7}, InterferenceModel{0.98});
    two.trials_per_block = n.trials_per_block = 50000;
    two.blocks = n.blocks = 4;
    two.seed = n.seed = 123;
    const auto a = run_experiment(two, RunOptions{1});
    const auto b = run_experiment(n, RunOptions{1});
    CHECK(a.pooled == b.pooled);
    CHECK(expected_conclusive(two) == doctest::Approx(expected_conclusive(n)).epsilon(1e-13));
}

TEST_CASE("N-state engine converges to the closed form") {
    const std::vector<ComplexAmplitude> programs = {
        {1.2, 0.0}, {-0.6, 1.0}, {-0.6, -1.0}, {0.0, 0.3}};
    auto cfg = make_nstate_config(programs, DetectorModel{0.8, 0.0});
    cfg.trials_per_block = 50000;
    cfg.blocks = 10;
    cfg.seed = 11;
    const auto r = run_experiment(cfg);
    const double expect = expected_conclusive(cfg);
    CHECK(std::abs(r.fractions.conclusive() - expect) <
          4.0 * binomial_stderr(expect, r.pooled.c_tot));
    CHECK(std::accumulate(r.pooled.c_minus.begin(), r.pooled.c_minus.end(), 0ULL) == 0);
}
