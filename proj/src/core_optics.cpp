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

#include "pudisc/core_optics.hpp"

#include <cmath>
#include <string>

#include "pudisc/errors.hpp"

namespace pudisc {

BeamSplitter::BeamSplitter(double transmittance) : transmittance_(transmittance) {
    if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
        throw DomainError("beam splitter transmittance must lie in [0,1], got " +
                          std::to_string(transmittance));
    }
}

PortPair bs_transform(ComplexAmplitude a_in, ComplexAmplitude b_in, const BeamSplitter& bs) {
    const double t = std::sqrt(bs.transmittance());
    const ComplexAmplitude ir{0.0, std::sqrt(bs.reflectance())};
    return {t * a_in + ir * b_in, ir * a_in + t * b_in};
}

ComplexAmplitude apply_phase(ComplexAmplitude a, double phi) {
    return a * std::polar(1.0, phi);
}

ComplexAmplitude from_intensity_phase(double mean_photons, double phi) {
    if (!(mean_photons >= 0.0)) {
        throw DomainError("mean photon number must be non-negative, got " +
                          std::to_string(mean_photons));
    }
    return std::polar(std::sqrt(mean_photons), phi);
}

}  // namespace pudisc
