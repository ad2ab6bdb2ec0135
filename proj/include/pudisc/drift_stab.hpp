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
#include <functional>
#include <span>
#include <vector>

#include "pudisc/rng.hpp"

namespace pudisc {

/// Random-walk phase drift, applied once per block to every interferometer.
struct DriftModel {
    double sigma = 0.0;  ///< radians per sqrt(block); 0 disables drift

    void validate() const;
};

/// Dither-and-lock settings. Probe pulses are drawn from their own random
/// stream and never enter the measurement counts.
struct StabilizerConfig {
    bool enabled = false;
    std::uint64_t probe_trials = 10000;  ///< calibration pulses per dither point
    double dither = 0.3;                 ///< radians
    double gain = 0.8;                   ///< in (0,1]

    /// Throws ConfigError when enabled with probe_trials == 0, dither <= 0,
    /// or gain outside (0,1].
    void validate() const;
};

/// Dark-port probe of one interferometer, fed with that interferometer's own
/// program state as the unknown input.
struct ProbeChannel {
    /// Click probability at the dark port for a given unknown-arm phase.
    std::function<double(double phase)> click_probability;
    /// B in eta*n + dark = A - B cos(phase): the detected fringe half-amplitude.
    double fringe_amplitude = 0.0;
};

/// phase_j += sigma * N(0,1), independently per interferometer.
void evolve(const DriftModel& drift, std::span<double> phases, rng::CounterStream& stream);

/// Probe at phase +/- dither and invert the click rates into a phase estimate.
/// Returns 0 when the channel has no fringe to lock on.
double estimate_phase(const ProbeChannel& channel, double phase, const StabilizerConfig& cfg,
                      rng::CounterStream& plus_stream, rng::CounterStream& minus_stream);

/// One correction pass over all interferometers for the given block:
/// phase_j -= gain * estimate_j.
void stabilize(std::span<double> phases, std::span<const ProbeChannel> channels,
               const StabilizerConfig& cfg, std::uint64_t seed, std::uint64_t block);

/// V cos(phase): the fringe visibility an interferometer with visibility V
/// shows when its arms are offset by phase.
double visibility_equivalent(double phase, double visibility);

/// Sequential drift + lock loop of one simulated experiment.
class PhaseTracker {
public:
    PhaseTracker(std::size_t interferometers, DriftModel drift, StabilizerConfig stabilizer,
                 std::vector<ProbeChannel> channels, std::uint64_t seed);

    /// Drift for one block, then correct if enabled. Returns the phase
    /// errors the following measurement block sees.
    std::span<const double> advance();

    std::span<const double> phases() const { return phases_; }
    std::uint64_t blocks_done() const { return block_; }
    std::uint64_t probe_pulses_used() const { return probe_pulses_; }

private:
    DriftModel drift_;
    StabilizerConfig stabilizer_;
    std::vector<ProbeChannel> channels_;
    std::uint64_t seed_;
    std::vector<double> phases_;
    std::uint64_t block_ = 0;
    std::uint64_t probe_pulses_ = 0;
};

}  // namespace pudisc
