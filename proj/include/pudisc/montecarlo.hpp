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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pudisc/core_optics.hpp"
#include "pudisc/detection.hpp"
#include "pudisc/discriminator.hpp"
#include "pudisc/drift_stab.hpp"

namespace pudisc {

/// Everything one simulated measurement run needs. Lists indexed by program
/// state j also index detector D_j and the interferometer feeding it.
struct ExperimentConfig {
    std::vector<ComplexAmplitude> programs;
    Network network = derive_plan(0.5);
    std::vector<DetectorModel> detectors;
    std::vector<InterferenceModel> interference;
    /// Probability that the unknown equals program j. Empty means uniform.
    std::vector<double> priors;
    std::uint64_t trials_per_block = 100000;
    std::uint64_t blocks = 10;
    std::uint64_t seed = 1;
    DriftModel drift;
    StabilizerConfig stabilizer;

    std::size_t states() const { return programs.size(); }
    std::vector<double> effective_priors() const;

    /// Throws ConfigError (or DomainError from a component model).
    void validate() const;
};

/// Two-program configuration with shared settings for both arms.
ExperimentConfig make_two_state_config(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2,
                                       double t0, DetectorModel detector,
                                       InterferenceModel interference = {});

/// N-program configuration with identical detectors and interferometers.
ExperimentConfig make_nstate_config(std::vector<ComplexAmplitude> programs,
                                    DetectorModel detector, InterferenceModel interference = {});

struct TrialOutcome {
    std::size_t truth;
    Outcome outcome;
};

/// Tallies indexed by the true hypothesis j: c_plus[j] correct, c_minus[j]
/// erroneous identifications while the unknown was program j.
struct Counts {
    std::vector<std::uint64_t> c_plus;
    std::vector<std::uint64_t> c_minus;
    std::uint64_t double_clicks = 0;
    std::uint64_t no_clicks = 0;
    std::uint64_t c_tot = 0;

    Counts() = default;
    explicit Counts(std::size_t states) : c_plus(states, 0), c_minus(states, 0) {}

    void add(const TrialOutcome& trial);
    Counts& operator+=(const Counts& other);
    bool operator==(const Counts&) const = default;

    std::uint64_t conclusive() const;
    std::uint64_t inconclusive() const { return double_clicks + no_clicks; }
    /// Every trial is accounted for exactly once.
    bool consistent() const;
};

/// Fractions of C_tot, with standard errors from the spread of the block values.
struct Fractions {
    std::vector<double> p_plus;
    std::vector<double> p_minus;
    double p_inconclusive = 0.0;
    std::vector<double> stderr_plus;
    std::vector<double> stderr_minus;
    double stderr_inconclusive = 0.0;

    double conclusive() const;
};

/// Click probabilities for fixed phase errors, precomputed for every
/// (true hypothesis, detector) pair. Sampling trial i only reads the random
/// stream (seed, i), so any sharding of trial indices gives the same tallies.
class TrialKernel {
public:
    TrialKernel(const ExperimentConfig& cfg, std::span<const double> phase_errors);

    TrialOutcome sample(std::uint64_t trial_index) const;
    double click_probability(std::size_t truth, std::size_t detector) const {
        return click_[truth * states_ + detector];
    }
    std::size_t states() const { return states_; }

private:
    std::uint64_t seed_;
    std::size_t states_;
    std::vector<double> cumulative_priors_;
    std::vector<double> click_;
};

TrialOutcome run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index,
                       std::span<const double> phase_errors = {});

struct RunOptions {
    unsigned workers = 0;  ///< 0 picks std::thread::hardware_concurrency()
};

struct ExperimentResult {
    std::vector<Counts> blocks;
    Counts pooled;
    Fractions fractions;
    /// Phase errors each block was measured with, one row per block.
    std::vector<std::vector<double>> phase_trace;
    std::uint64_t probe_pulses = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options = {});

/// Fractions over pooled counts; stderr is the sample standard deviation of
/// the block fractions over sqrt(blocks), or binomial for a single block.
Fractions make_fractions(std::span<const Counts> blocks, const Counts& pooled);

/// sqrt(p (1-p) / n).
double binomial_stderr(double p, std::uint64_t n);

/// Prior-weighted closed-form success probability (perfect visibility, no
/// dark counts, no phase errors).
double expected_conclusive(const ExperimentConfig& cfg);

/// Probe models used by the stabilizer, one per interferometer.
std::vector<ProbeChannel> probe_channels(const ExperimentConfig& cfg);

}  // namespace pudisc
