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
#include <variant>
#include <vector>

#include "pudisc/core_optics.hpp"

namespace pudisc {

/// Splitting ratios of the two-program network. Only derive_plan() builds
/// one, so t1 and t2 always follow from t0.
class SplitterPlan {
public:
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    double t2() const { return t2_; }

    /// t0 == 0 or t0 == 1: one detector never receives light.
    bool degenerate() const { return t0_ == 0.0 || t0_ == 1.0; }

    friend SplitterPlan derive_plan(double t0);

private:
    SplitterPlan(double t0, double t1, double t2) : t0_(t0), t1_(t1), t2_(t2) {}
    double t0_;
    double t1_;
    double t2_;
};

/// t1 = 1/(1+t0), t2 = (1-t0)/(2-t0). Throws DomainError outside [0,1].
SplitterPlan derive_plan(double t0);

/// N-program network: the unknown beam is divided equally into n arms and
/// every program splitter has T = n/(n+1).
class NStatePlan {
public:
    static constexpr std::size_t kMaxStates = 64;

    /// Throws DomainError unless 2 <= n <= kMaxStates.
    explicit NStatePlan(std::size_t n);

    std::size_t n() const { return n_; }
    double transmittance() const;
    double reflectance() const;

private:
    std::size_t n_;
};

using Network = std::variant<SplitterPlan, NStatePlan>;

std::size_t program_count(const Network& network);

/// Field at one detector, split into the part that came from the program
/// beam and the part that came from the unknown beam.
struct PortField {
    ComplexAmplitude program;
    ComplexAmplitude unknown;

    ComplexAmplitude total() const { return program + unknown; }
    double incoherent_intensity() const { return intensity(program) + intensity(unknown); }
};

struct PortAmplitudes {
    std::vector<PortField> ports;

    std::size_t size() const { return ports.size(); }
    ComplexAmplitude d(std::size_t j) const { return ports.at(j).total(); }
};

/// Fields at D1 and D2 of the two-program network:
///   d1 = i sqrt(t0/(1+t0)) (a1 - u),  d2 = sqrt((1-t0)/(2-t0)) (a2 - u).
/// phase_errors (empty, or one per interferometer) are extra phase shifts on
/// the unknown-state arm of each interferometer.
PortAmplitudes detector_amplitudes(ComplexAmplitude alpha_unknown, ComplexAmplitude alpha_1,
                                   ComplexAmplitude alpha_2, const SplitterPlan& plan,
                                   std::span<const double> phase_errors = {});

/// |d_j|^2 = |a_j - u|^2 / (n+1). Throws DomainError when programs.size() != plan.n()
/// or phase_errors is neither empty nor of length n.
PortAmplitudes nstate_amplitudes(ComplexAmplitude alpha_unknown,
                                 std::span<const ComplexAmplitude> programs, const NStatePlan& plan,
                                 std::span<const double> phase_errors = {});

/// Dispatches to detector_amplitudes or nstate_amplitudes.
PortAmplitudes propagate(const Network& network, ComplexAmplitude alpha_unknown,
                         std::span<const ComplexAmplitude> programs,
                         std::span<const double> phase_errors = {});

// Outcomes. Hypothesis indices are zero-based.
struct Identified {
    std::size_t hypothesis;
    bool operator==(const Identified&) const = default;
};
struct Erroneous {
    std::size_t reported;
    std::size_t truth;
    bool operator==(const Erroneous&) const = default;
};
struct InconclusiveNoClick {
    bool operator==(const InconclusiveNoClick&) const = default;
};
/// Some detector clicked but zero or several hypotheses survive. For two
/// programs this is exactly the double click.
struct InconclusiveMultiClick {
    bool operator==(const InconclusiveMultiClick&) const = default;
};

using Outcome = std::variant<Identified, Erroneous, InconclusiveNoClick, InconclusiveMultiClick>;

/// Bit j set means detector D_(j+1) clicked.
using ClickPattern = std::uint64_t;

/// Exclusion rule: a click at D_j rules out hypothesis j. Identified(k) iff
/// exactly one hypothesis survives. Never returns Erroneous.
Outcome classify(ClickPattern clicks, std::size_t n);
Outcome classify(std::span<const bool> clicks);

/// Turns Identified(k) into Erroneous when k != truth.
Outcome resolve(const Outcome& verdict, std::size_t truth);

}  // namespace pudisc
