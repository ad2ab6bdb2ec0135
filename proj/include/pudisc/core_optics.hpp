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

#include <complex>
#include <utility>

namespace pudisc {

/// Complex field amplitude of a coherent state in one optical mode,
/// normalized so that |a|^2 is the mean photon number per pulse.
using ComplexAmplitude = std::complex<double>;

inline double intensity(ComplexAmplitude a) { return std::norm(a); }

/// Lossless two-port beam splitter. Reflectance is always 1 - T.
class BeamSplitter {
public:
    /// Throws DomainError unless 0 <= transmittance <= 1.
    explicit BeamSplitter(double transmittance);

    double transmittance() const { return transmittance_; }
    double reflectance() const { return 1.0 - transmittance_; }

private:
    double transmittance_;
};

struct PortPair {
    ComplexAmplitude a;
    ComplexAmplitude b;
};

/// Symmetric convention, i on reflection:
///   a_out = sqrt(T) a_in + i sqrt(R) b_in
///   b_out = i sqrt(R) a_in + sqrt(T) b_in
PortPair bs_transform(ComplexAmplitude a_in, ComplexAmplitude b_in, const BeamSplitter& bs);

/// a * exp(i phi).
ComplexAmplitude apply_phase(ComplexAmplitude a, double phi);

/// sqrt(n) * exp(i phi). Throws DomainError for n < 0.
ComplexAmplitude from_intensity_phase(double mean_photons, double phi);

}  // namespace pudisc
