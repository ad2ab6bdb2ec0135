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
#include <string>
#include <string_view>
#include <vector>

#include "pudisc/core_optics.hpp"
#include "pudisc/drift_stab.hpp"
#include "pudisc/montecarlo.hpp"
#include "pudisc/table.hpp"

namespace pudisc {

/// Coherent state given as mean photon number and phase in degrees.
struct PolarState {
    double mean_photons = 1.0;
    double phase_deg = 0.0;

    ComplexAmplitude amplitude() const;
};

/// Parses "n:deg" (or a bare "n", phase 0). Throws std::invalid_argument.
PolarState parse_polar(std::string_view text);

/// Settings shared by every scenario; defaults are the experiment's
/// operating point (53% detectors, 4e-7 dark counts, 98% visibility).
struct ScenarioParams {
    double t0 = 0.5;
    double eta1 = 0.53;
    double eta2 = 0.53;
    double dark = 4e-7;
    double vis1 = 0.98;
    double vis2 = 0.98;
    PolarState alpha1{1.0, 0.0};
    PolarState alpha2{1.0, 180.0};
    std::uint64_t trials_per_block = 100000;
    std::uint64_t blocks = 10;
    std::uint64_t seed = 1;
    double drift_sigma = 0.0;
    StabilizerConfig stabilizer;
    unsigned workers = 0;

    /// Two-program configuration for the given amplitudes.
    ExperimentConfig two_state(ComplexAmplitude alpha_1, ComplexAmplitude alpha_2) const;
    /// N-program configuration; every arm uses eta1, vis1 and dark.
    ExperimentConfig nstate(std::vector<ComplexAmplitude> programs) const;
};

enum class SweepVariable { kPhaseDifference, kIntensity, kIntensityRatio, kNStates };

struct SweepSpec {
    SweepVariable variable = SweepVariable::kPhaseDifference;
    double start = 0.0;
    double stop = 360.0;
    std::size_t points = 37;
    ScenarioParams params;

    /// Throws std::invalid_argument for points < 2 or a non-finite range.
    void validate() const;
    std::vector<double> grid() const;
};

/// Column names shared by the two-program sweeps, in CSV order.
const std::vector<std::string>& result_row_columns();

/// x = phase difference in degrees between program 2 and program 1.
Table sweep_phase(const SweepSpec& spec);
/// x = |a1|^2 = |a2|^2; adds analytic_ideal_p1/p2 for unit efficiency.
Table sweep_intensity(const SweepSpec& spec);
/// x = |a2|^2 / |a1|^2 at fixed |a1|^2; adds analytic_180 and analytic_0.
Table sweep_ratio(const SweepSpec& spec);
/// x = number of program states on a ring of fixed intensity |a1|^2.
Table sweep_nstates(const SweepSpec& spec);

/// Per-hypothesis success of the n-program discriminator.
Table nstate_report(const std::vector<ComplexAmplitude>& programs, const ScenarioParams& params);

/// n states of equal intensity, equally spaced in phase.
std::vector<ComplexAmplitude> ring_programs(std::size_t n, double mean_photons);

/// fig3, fig4, fig5, fig6, nstates.
const std::vector<std::string>& preset_names();
/// Throws std::invalid_argument for an unknown name.
Table run_preset(std::string_view name, const ScenarioParams& params);

/// Throws InvariantError if any cell is non-finite or a fraction or
/// probability column leaves [0,1].
void check_table(const Table& table);

}  // namespace pudisc
