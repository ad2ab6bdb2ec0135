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

#include "pudisc/detection.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pudisc/errors.hpp"

namespace pudisc {

void DetectorModel::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw DomainError("detector efficiency must lie in [0,1], got " +
                          std::to_string(efficiency));
    }
    if (!(dark_mean >= 0.0) || !std::isfinite(dark_mean)) {
        throw DomainError("dark count mean must be finite and non-negative, got " +
                          std::to_string(dark_mean));
    }
}

void InterferenceModel::validate() const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw DomainError("visibility must lie in [0,1], got " + std::to_string(visibility));
    }
}

double port_mean_photons(ComplexAmplitude coherent_sum, double incoherent_sum,
                         const InterferenceModel& interference) {
    if (!(incoherent_sum >= 0.0)) {
        throw DomainError("incoherent intensity must be non-negative");
    }
    const double v = interference.visibility;
    return v * intensity(coherent_sum) + (1.0 - v) * incoherent_sum;
}

double port_mean_photons(const PortField& port, const InterferenceModel& interference) {
    return port_mean_photons(port.total(), port.incoherent_intensity(), interference);
}

double click_probability(double mean_photons, const DetectorModel& detector) {
    if (!(mean_photons >= 0.0)) {
        throw DomainError("mean photon number must be non-negative");
    }
    // (1 - p_dark) exp(-eta n) == exp(-(eta n + dark_mean))
    return -std::expm1(-(detector.efficiency * mean_photons + detector.dark_mean));
}

double analytic_p1(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2, double t0, double eta2) {
    const double gain = (1.0 - t0) / (2.0 - t0);
    return -std::expm1(-eta2 * gain * intensity(alpha_1 - alpha_2));
}

double analytic_p2(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2, double t0, double eta1) {
    const double gain = t0 / (1.0 + t0);
    return -std::expm1(-eta1 * gain * intensity(alpha_1 - alpha_2));
}

double analytic_nstate_success(std::span<const ComplexAmplitude> programs, std::size_t k,
                               const NStatePlan& plan, const DetectorModel& detector) {
    if (programs.size() != plan.n()) {
        throw DomainError("plan expects " + std::to_string(plan.n()) +
                          " program states, got " + std::to_string(programs.size()));
    }
    if (k >= programs.size()) {
        throw DomainError("hypothesis index out of range");
    }
    if (detector.dark_mean != 0.0) {
        throw DomainError("closed-form n-state success excludes dark counts");
    }
    std::vector<double> distances;
    distances.reserve(programs.size() - 1);
    for (std::size_t j = 0; j < programs.size(); ++j) {
        if (j != k) {
            distances.push_back(intensity(programs[j] - programs[k]));
        }
    }
    return analytic_nstate_success(distances, plan.n(), detector.efficiency);
}

double analytic_nstate_success(std::span<const double> squared_distances, std::size_t n,
                               double efficiency) {
    const double scale = efficiency / static_cast<double>(n + 1);
    double p = 1.0;
    for (double d2 : squared_distances) {
        p *= -std::expm1(-scale * d2);
    }
    return p;
}

}  // namespace pudisc
