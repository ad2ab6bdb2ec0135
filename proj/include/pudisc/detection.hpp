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
#include <span>

#include "pudisc/core_optics.hpp"
#include "pudisc/discriminator.hpp"

namespace pudisc {

/// Threshold (click / no-click) detector.
struct DetectorModel {
    double efficiency = 1.0;  ///< quantum efficiency in [0,1]
    double dark_mean = 0.0;   ///< mean dark counts per coincidence window

    /// Throws DomainError on out-of-range fields.
    void validate() const;
};

/// Fringe visibility of one interferometer. 1 is perfect mode overlap.
struct InterferenceModel {
    double visibility = 1.0;

    void validate() const;
};

/// Mean photon number at a port: V |coherent_sum|^2 + (1-V) incoherent_sum.
/// Throws DomainError if incoherent_sum < 0.
double port_mean_photons(ComplexAmplitude coherent_sum, double incoherent_sum,
                         const InterferenceModel& interference);
double port_mean_photons(const PortField& port, const InterferenceModel& interference);

/// 1 - (1 - p_dark) exp(-eta n) with p_dark = 1 - exp(-dark_mean).
/// Throws DomainError if n < 0.
double click_probability(double mean_photons, const DetectorModel& detector);

/// Probability of correctly identifying program 1 (click at D2).
double analytic_p1(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2, double t0, double eta2);
/// Probability of correctly identifying program 2 (click at D1).
double analytic_p2(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2, double t0, double eta1);

/// Success probability for true program k in the n-program network: every
/// other detector must click. Closed form without dark counts; throws
/// DomainError if detector.dark_mean != 0 or k is out of range.
double analytic_nstate_success(std::span<const ComplexAmplitude> programs, std::size_t k,
                               const NStatePlan& plan, const DetectorModel& detector);

/// Same product, written in terms of |a_j - a_k|^2 for the n-1 other programs.
double analytic_nstate_success(std::span<const double> squared_distances, std::size_t n,
                               double efficiency);

}  // namespace pudisc
