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

#include "pudisc/drift_stab.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pudisc/errors.hpp"

namespace pudisc {
namespace {

std::uint64_t count_clicks(double p, std::uint64_t trials, rng::CounterStream& stream) {
    std::uint64_t clicks = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        clicks += stream.uniform() < p ? 1 : 0;
    }
    return clicks;
}

// -ln(1 - f) = eta*n + dark, with f kept off 1 so the log stays finite.
double detected_photons(std::uint64_t clicks, std::uint64_t trials) {
    const double n = static_cast<double>(trials);
    const double f = std::min(static_cast<double>(clicks) / n, 1.0 - 0.5 / n);
    return -std::log1p(-f);
}

}  // namespace

void DriftModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("drift sigma must be finite and non-negative, got " +
                          std::to_string(sigma));
    }
}

void StabilizerConfig::validate() const {
    if (!enabled) {
        return;
    }
    if (probe_trials == 0) {
        throw ConfigError("stabilizer needs probe_trials >= 1");
    }
    if (!(dither > 0.0) || !std::isfinite(dither)) {
        throw ConfigError("stabilizer dither must be positive");
    }
    if (!(gain > 0.0 && gain <= 1.0)) {
        throw ConfigError("stabilizer gain must lie in (0,1], got " + std::to_string(gain));
    }
}

void evolve(const DriftModel& drift, std::span<double> phases, rng::CounterStream& stream) {
    if (drift.sigma == 0.0) {
        return;
    }
    for (double& phase : phases) {
        phase += drift.sigma * stream.normal();
    }
}

double estimate_phase(const ProbeChannel& channel, double phase, const StabilizerConfig& cfg,
                      rng::CounterStream& plus_stream, rng::CounterStream& minus_stream) {
    const double plus = detected_photons(
        count_clicks(channel.click_probability(phase + cfg.dither), cfg.probe_trials, plus_stream),
        cfg.probe_trials);
    const double minus = detected_photons(
        count_clicks(channel.click_probability(phase - cfg.dither), cfg.probe_trials,
                     minus_stream),
        cfg.probe_trials);
    const double scale = 2.0 * channel.fringe_amplitude * std::sin(cfg.dither);
    if (!(scale > 0.0)) {
        return 0.0;
    }
    // plus - minus = 2 B sin(phase) sin(dither)
    return std::asin(std::clamp((plus - minus) / scale, -1.0, 1.0));
}

void stabilize(std::span<double> phases, std::span<const ProbeChannel> channels,
               const StabilizerConfig& cfg, std::uint64_t seed, std::uint64_t block) {
    cfg.validate();
    if (!cfg.enabled) {
        throw ConfigError("stabilize called with the stabilizer disabled");
    }
    if (channels.size() != phases.size()) {
        throw ConfigError("one probe channel per interferometer required");
    }
    const std::uint64_t base = block * phases.size();
    for (std::size_t j = 0; j < phases.size(); ++j) {
        rng::CounterStream plus(seed, rng::Stream::kProbe, 2 * (base + j));
        rng::CounterStream minus(seed, rng::Stream::kProbe, 2 * (base + j) + 1);
        phases[j] -= cfg.gain * estimate_phase(channels[j], phases[j], cfg, plus, minus);
    }
}

double visibility_equivalent(double phase, double visibility) {
    return visibility * std::cos(phase);
}

PhaseTracker::PhaseTracker(std::size_t interferometers, DriftModel drift,
                           StabilizerConfig stabilizer, std::vector<ProbeChannel> channels,
                           std::uint64_t seed)
    : drift_(drift),
      stabilizer_(stabilizer),
      channels_(std::move(channels)),
      seed_(seed),
      phases_(interferometers, 0.0) {
    drift_.validate();
    stabilizer_.validate();
    if (stabilizer_.enabled && channels_.size() != interferometers) {
        throw ConfigError("one probe channel per interferometer required");
    }
}

std::span<const double> PhaseTracker::advance() {
    rng::CounterStream drift_stream(seed_, rng::Stream::kDrift, block_);
    evolve(drift_, phases_, drift_stream);
    if (stabilizer_.enabled) {
        stabilize(phases_, channels_, stabilizer_, seed_, block_);
        probe_pulses_ += 2 * stabilizer_.probe_trials * phases_.size();
    }
    ++block_;
    return phases_;
}

}  // namespace pudisc
