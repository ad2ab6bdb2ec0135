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

#include "pudisc/discriminator.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "pudisc/errors.hpp"

namespace pudisc {
namespace {

// Fixed -pi/2 plate on the unknown arm that turns "program + i * unknown"
// into a difference, so the matching port is dark.
constexpr ComplexAmplitude kNullCompensation{0.0, -1.0};

double phase_error_at(std::span<const double> phase_errors, std::size_t j) {
    return phase_errors.empty() ? 0.0 : phase_errors[j];
}

void check_phase_errors(std::span<const double> phase_errors, std::size_t n) {
    if (!phase_errors.empty() && phase_errors.size() != n) {
        throw DomainError("expected " + std::to_string(n) + " phase errors, got " +
                          std::to_string(phase_errors.size()));
    }
}

}  // namespace

SplitterPlan derive_plan(double t0) {
    if (!(t0 >= 0.0 && t0 <= 1.0)) {
        throw DomainError("t0 must lie in [0,1], got " + std::to_string(t0));
    }
    return SplitterPlan(t0, 1.0 / (1.0 + t0), (1.0 - t0) / (2.0 - t0));
}

NStatePlan::NStatePlan(std::size_t n) : n_(n) {
    if (n < 2 || n > kMaxStates) {
        throw DomainError("number of program states must lie in [2," +
                          std::to_string(kMaxStates) + "], got " + std::to_string(n));
    }
}

double NStatePlan::transmittance() const {
    return static_cast<double>(n_) / static_cast<double>(n_ + 1);
}

double NStatePlan::reflectance() const { return 1.0 / static_cast<double>(n_ + 1); }

std::size_t program_count(const Network& network) {
    if (const auto* nplan = std::get_if<NStatePlan>(&network)) {
        return nplan->n();
    }
    return 2;
}

PortAmplitudes detector_amplitudes(ComplexAmplitude alpha_unknown, ComplexAmplitude alpha_1,
                                   ComplexAmplitude alpha_2, const SplitterPlan& plan,
                                   std::span<const double> phase_errors) {
    check_phase_errors(phase_errors, 2);
    const BeamSplitter bs0(plan.t0());
    const BeamSplitter bs1(plan.t1());
    const BeamSplitter bs2(plan.t2());

    // BS0: transmitted part feeds BS1, reflected part feeds BS2.
    const auto split = bs_transform(alpha_unknown, 0.0, bs0);
    const ComplexAmplitude arm1 =
        apply_phase(split.a, phase_error_at(phase_errors, 0)) * kNullCompensation;
    const ComplexAmplitude arm2 = apply_phase(split.b, phase_error_at(phase_errors, 1));

    // BS1: program reflected into D1, unknown transmitted into D1.
    PortField d1{bs_transform(0.0, alpha_1, bs1).a, bs_transform(arm1, 0.0, bs1).a};
    // BS2: program transmitted into D2, unknown reflected into D2.
    PortField d2{bs_transform(alpha_2, 0.0, bs2).a, bs_transform(0.0, arm2, bs2).a};
    return PortAmplitudes{{d1, d2}};
}

PortAmplitudes nstate_amplitudes(ComplexAmplitude alpha_unknown,
                                 std::span<const ComplexAmplitude> programs, const NStatePlan& plan,
                                 std::span<const double> phase_errors) {
    const std::size_t n = plan.n();
    if (programs.size() != n) {
        throw DomainError("plan expects " + std::to_string(n) + " program states, got " +
                          std::to_string(programs.size()));
    }
    check_phase_errors(phase_errors, n);

    const BeamSplitter bs(plan.transmittance());
    // Ideal balanced 1->n splitter with equal output phases.
    const ComplexAmplitude share = alpha_unknown / std::sqrt(static_cast<double>(n));

    PortAmplitudes out;
    out.ports.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexAmplitude arm =
            apply_phase(share, phase_error_at(phase_errors, j)) * kNullCompensation;
        out.ports.push_back({bs_transform(0.0, programs[j], bs).a, bs_transform(arm, 0.0, bs).a});
    }
    return out;
}

PortAmplitudes propagate(const Network& network, ComplexAmplitude alpha_unknown,
                         std::span<const ComplexAmplitude> programs,
                         std::span<const double> phase_errors) {
    if (const auto* plan = std::get_if<SplitterPlan>(&network)) {
        if (programs.size() != 2) {
            throw DomainError("two-program network needs exactly 2 program states, got " +
                              std::to_string(programs.size()));
        }
        return detector_amplitudes(alpha_unknown, programs[0], programs[1], *plan, phase_errors);
    }
    return nstate_amplitudes(alpha_unknown, programs, std::get<NStatePlan>(network),
                             phase_errors);
}

Outcome classify(ClickPattern clicks, std::size_t n) {
    if (clicks == 0) {
        return InconclusiveNoClick{};
    }
    const ClickPattern all = n >= 64 ? ~ClickPattern{0} : (ClickPattern{1} << n) - 1;
    const ClickPattern survivors = ~clicks & all;
    if (std::popcount(survivors) == 1) {
        return Identified{static_cast<std::size_t>(std::countr_zero(survivors))};
    }
    return InconclusiveMultiClick{};
}

Outcome classify(std::span<const bool> clicks) {
    if (clicks.size() > NStatePlan::kMaxStates) {
        throw DomainError("at most 64 detectors supported");
    }
    ClickPattern mask = 0;
    for (std::size_t j = 0; j < clicks.size(); ++j) {
        if (clicks[j]) {
            mask |= ClickPattern{1} << j;
        }
    }
    return classify(mask, clicks.size());
}

Outcome resolve(const Outcome& verdict, std::size_t truth) {
    if (const auto* id = std::get_if<Identified>(&verdict); id && id->hypothesis != truth) {
        return Erroneous{id->hypothesis, truth};
    }
    return verdict;
}

}  // namespace pudisc
