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

#include "pudisc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <thread>
#include <type_traits>

#include "pudisc/errors.hpp"
#include "pudisc/rng.hpp"

namespace pudisc {
namespace {

constexpr double kPriorTolerance = 1e-12;
constexpr std::uint64_t kChunkTrials = 1 << 16;

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

// Standard error of one fraction field, given its per-block numerators.
template <typename Field>
double block_stderr(std::span<const Counts> blocks, const Counts& pooled, Field field) {
    if (pooled.c_tot == 0) {
        return 0.0;
    }
    if (blocks.size() < 2) {
        const double p = static_cast<double>(field(pooled)) / static_cast<double>(pooled.c_tot);
        return binomial_stderr(p, pooled.c_tot);
    }
    std::vector<double> values;
    values.reserve(blocks.size());
    for (const Counts& b : blocks) {
        values.push_back(b.c_tot == 0 ? 0.0
                                      : static_cast<double>(field(b)) /
                                            static_cast<double>(b.c_tot));
    }
    return sample_stddev(values) / std::sqrt(static_cast<double>(blocks.size()));
}

Counts run_block(const TrialKernel& kernel, std::uint64_t first, std::uint64_t trials,
                 unsigned workers) {
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    const unsigned used = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

    auto work = [&](std::atomic<std::uint64_t>& next, Counts& local) {
        for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            const std::uint64_t begin = c * kChunkTrials;
            const std::uint64_t end = std::min(trials, begin + kChunkTrials);
            for (std::uint64_t i = begin; i < end; ++i) {
                local.add(kernel.sample(first + i));
            }
        }
    };

    std::atomic<std::uint64_t> next{0};
    std::vector<Counts> partial(std::max(used, 1u), Counts(kernel.states()));
    if (used <= 1) {
        work(next, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(used);
        for (unsigned w = 0; w < used; ++w) {
            pool.emplace_back([&, w] { work(next, partial[w]); });
        }
    }
    Counts total(kernel.states());
    for (const Counts& p : partial) {
        total += p;
    }
    return total;
}

}  // namespace

std::vector<double> ExperimentConfig::effective_priors() const {
    if (priors.empty()) {
        return std::vector<double>(states(), 1.0 / static_cast<double>(states()));
    }
    return priors;
}

void ExperimentConfig::validate() const {
    const std::size_t n = program_count(network);
    if (programs.size() != n) {
        throw ConfigError("network expects " + std::to_string(n) + " program states, got " +
                          std::to_string(programs.size()));
    }
    if (detectors.size() != n) {
        throw ConfigError("need one detector model per program state");
    }
    if (interference.size() != n) {
        throw ConfigError("need one interference model per interferometer");
    }
    for (const auto& d : detectors) {
        d.validate();
    }
    for (const auto& v : interference) {
        v.validate();
    }
    for (const auto& a : programs) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ConfigError("program amplitudes must be finite");
        }
    }
    if (!priors.empty()) {
        if (priors.size() != n) {
            throw ConfigError("need one prior per program state");
        }
        double sum = 0.0;
        for (double p : priors) {
            if (!(p >= 0.0)) {
                throw ConfigError("priors must be non-negative");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > kPriorTolerance) {
            throw ConfigError("priors must sum to 1");
        }
    }
    if (trials_per_block == 0) {
        throw ConfigError("trials_per_block must be >= 1");
    }
    if (blocks == 0) {
        throw ConfigError("blocks must be >= 1");
    }
    if (trials_per_block > std::numeric_limits<std::uint64_t>::max() / blocks) {
        throw ConfigError("total trial count overflows 64-bit counters");
    }
    drift.validate();
    stabilizer.validate();
}

ExperimentConfig make_two_state_config(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2,
                                       double t0, DetectorModel detector,
                                       InterferenceModel interference) {
    ExperimentConfig cfg;
    cfg.programs = {alpha_1, alpha_2};
    cfg.network = derive_plan(t0);
    cfg.detectors = {detector, detector};
    cfg.interference = {interference, interference};
    return cfg;
}

ExperimentConfig make_nstate_config(std::vector<ComplexAmplitude> programs,
                                    DetectorModel detector, InterferenceModel interference) {
    ExperimentConfig cfg;
    const std::size_t n = programs.size();
    cfg.network = NStatePlan(n);
    cfg.programs = std::move(programs);
    cfg.detectors.assign(n, detector);
    cfg.interference.assign(n, interference);
    return cfg;
}

void Counts::add(const TrialOutcome& trial) {
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Identified>) {
                ++c_plus[trial.truth];
            } else if constexpr (std::is_same_v<T, Erroneous>) {
                ++c_minus[trial.truth];
            } else if constexpr (std::is_same_v<T, InconclusiveNoClick>) {
                ++no_clicks;
            } else {
                ++double_clicks;
            }
        },
        trial.outcome);
    ++c_tot;
}

Counts& Counts::operator+=(const Counts& other) {
    if (c_plus.size() != other.c_plus.size()) {
        throw InvariantError("cannot merge counts over different numbers of states");
    }
    for (std::size_t j = 0; j < c_plus.size(); ++j) {
        c_plus[j] += other.c_plus[j];
        c_minus[j] += other.c_minus[j];
    }
    double_clicks += other.double_clicks;
    no_clicks += other.no_clicks;
    c_tot += other.c_tot;
    return *this;
}

std::uint64_t Counts::conclusive() const {
    return std::accumulate(c_plus.begin(), c_plus.end(), std::uint64_t{0}) +
           std::accumulate(c_minus.begin(), c_minus.end(), std::uint64_t{0});
}

bool Counts::consistent() const {
    return c_plus.size() == c_minus.size() && conclusive() + inconclusive() == c_tot;
}

double Fractions::conclusive() const {
    return std::accumulate(p_plus.begin(), p_plus.end(), 0.0) +
           std::accumulate(p_minus.begin(), p_minus.end(), 0.0);
}

TrialKernel::TrialKernel(const ExperimentConfig& cfg, std::span<const double> phase_errors)
    : seed_(cfg.seed), states_(cfg.states()) {
    const auto priors = cfg.effective_priors();
    cumulative_priors_.resize(states_);
    std::partial_sum(priors.begin(), priors.end(), cumulative_priors_.begin());

    click_.resize(states_ * states_);
    for (std::size_t k = 0; k < states_; ++k) {
        const PortAmplitudes ports = propagate(cfg.network, cfg.programs[k], cfg.programs,
                                               phase_errors);
        for (std::size_t j = 0; j < states_; ++j) {
            const double n = port_mean_photons(ports.ports[j], cfg.interference[j]);
            click_[k * states_ + j] = pudisc::click_probability(n, cfg.detectors[j]);
        }
    }
}

TrialOutcome TrialKernel::sample(std::uint64_t trial_index) const {
    rng::CounterStream stream(seed_, rng::Stream::kMeasurement, trial_index);

    const double u = stream.uniform();
    std::size_t truth = states_ - 1;
    for (std::size_t k = 0; k + 1 < states_; ++k) {
        if (u < cumulative_priors_[k]) {
            truth = k;
            break;
        }
    }
    // Zero-prior hypotheses at the tail are never drawn.
    while (truth > 0 && cumulative_priors_[truth] == cumulative_priors_[truth - 1]) {
        --truth;
    }

    const double* p = &click_[truth * states_];
    ClickPattern clicks = 0;
    for (std::size_t j = 0; j < states_; ++j) {
        if (stream.uniform() < p[j]) {
            clicks |= ClickPattern{1} << j;
        }
    }
    return {truth, resolve(classify(clicks, states_), truth)};
}

TrialOutcome run_trial(const ExperimentConfig& cfg, std::uint64_t trial_index,
                       std::span<const double> phase_errors) {
    cfg.validate();
    return TrialKernel(cfg, phase_errors).sample(trial_index);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
    cfg.validate();
    const unsigned workers =
        options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());

    const std::size_t n = cfg.states();
    PhaseTracker tracker(n, cfg.drift, cfg.stabilizer,
                         cfg.stabilizer.enabled ? probe_channels(cfg)
                                                : std::vector<ProbeChannel>{},
                         cfg.seed);
    const bool static_phases = cfg.drift.sigma == 0.0 && !cfg.stabilizer.enabled;
    std::unique_ptr<TrialKernel> fixed;
    if (static_phases) {
        fixed = std::make_unique<TrialKernel>(cfg, std::span<const double>{});
    }

    ExperimentResult result;
    result.pooled = Counts(n);
    result.blocks.reserve(cfg.blocks);
    for (std::uint64_t b = 0; b < cfg.blocks; ++b) {
        std::vector<double> phases(n, 0.0);
        if (!static_phases) {
            const auto current = tracker.advance();
            phases.assign(current.begin(), current.end());
        }
        const Counts block = run_block(static_phases ? *fixed : TrialKernel(cfg, phases),
                                       b * cfg.trials_per_block, cfg.trials_per_block, workers);
        if (!block.consistent() || block.c_tot != cfg.trials_per_block) {
            throw InvariantError("block tallies do not partition the trials");
        }
        result.pooled += block;
        result.blocks.push_back(block);
        result.phase_trace.push_back(std::move(phases));
    }
    result.probe_pulses = tracker.probe_pulses_used();
    result.fractions = make_fractions(result.blocks, result.pooled);
    return result;
}

Fractions make_fractions(std::span<const Counts> blocks, const Counts& pooled) {
    const std::size_t n = pooled.c_plus.size();
    const double total = static_cast<double>(pooled.c_tot);
    auto frac = [&](std::uint64_t c) { return pooled.c_tot == 0 ? 0.0 : c / total; };

    Fractions f;
    f.p_plus.resize(n);
    f.p_minus.resize(n);
    f.stderr_plus.resize(n);
    f.stderr_minus.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        f.p_plus[j] = frac(pooled.c_plus[j]);
        f.p_minus[j] = frac(pooled.c_minus[j]);
        f.stderr_plus[j] =
            block_stderr(blocks, pooled, [j](const Counts& c) { return c.c_plus[j]; });
        f.stderr_minus[j] =
            block_stderr(blocks, pooled, [j](const Counts& c) { return c.c_minus[j]; });
    }
    f.p_inconclusive = frac(pooled.inconclusive());
    f.stderr_inconclusive =
        block_stderr(blocks, pooled, [](const Counts& c) { return c.inconclusive(); });
    return f;
}

double binomial_stderr(double p, std::uint64_t n) {
    if (!(p >= 0.0 && p <= 1.0) || n == 0) {
        throw DomainError("binomial_stderr needs 0 <= p <= 1 and n >= 1");
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double expected_conclusive(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto priors = cfg.effective_priors();
    const auto& a = cfg.programs;
    if (const auto* plan = std::get_if<SplitterPlan>(&cfg.network)) {
        return priors[0] * analytic_p1(a[0], a[1], plan->t0(), cfg.detectors[1].efficiency) +
               priors[1] * analytic_p2(a[0], a[1], plan->t0(), cfg.detectors[0].efficiency);
    }
    const std::size_t n = cfg.states();
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != k) {
                p *= -std::expm1(-cfg.detectors[j].efficiency * intensity(a[j] - a[k]) /
                                 static_cast<double>(n + 1));
            }
        }
        total += priors[k] * p;
    }
    return total;
}

std::vector<ProbeChannel> probe_channels(const ExperimentConfig& cfg) {
    const auto shared = std::make_shared<const ExperimentConfig>(cfg);
    const std::size_t n = cfg.states();
    std::vector<ProbeChannel> channels;
    channels.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        auto port_at = [shared, j, n](double phase) {
            std::vector<double> phases(n, 0.0);
            phases[j] = phase;
            return propagate(shared->network, shared->programs[j], shared->programs, phases)
                .ports[j];
        };
        const PortField locked = port_at(0.0);
        const double fringe = 2.0 * cfg.detectors[j].efficiency *
                              cfg.interference[j].visibility * std::abs(locked.program) *
                              std::abs(locked.unknown);
        channels.push_back(
            {[shared, j, port_at](double phase) {
                 const double photons = port_mean_photons(port_at(phase), shared->interference[j]);
                 return click_probability(photons, shared->detectors[j]);
             },
             fringe});
    }
    return channels;
}

}  // namespace pudisc
