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

// pudisc: command-line front end for the coherent-state discriminator
// simulator. Every subcommand produces one table as CSV or SVG.
//
//   pudisc preset fig5 --trials 100000 --out fig5.csv
//   pudisc phase --alpha1 0.5:0 --alpha2 0.5:0 --points 19
//   pudisc nstate --n 4 --alpha1 1.0
//
// Options may also come from a key=value file given with --config; values on
// the command line win. Exit codes: 0 ok, 2 usage, 3 I/O, 4 invariant.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pudisc/discriminator.hpp"
#include "pudisc/errors.hpp"
#include "pudisc/scenarios.hpp"
#include "pudisc/table.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvariant = 4;

struct SweepFlags {
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<std::size_t> points;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& flags) {
    cmd->add_option("--start", flags.start, "First sweep value");
    cmd->add_option("--stop", flags.stop, "Last sweep value");
    cmd->add_option("--points", flags.points, "Number of sweep points (>= 2)");
}

pudisc::SweepSpec make_spec(pudisc::SweepVariable variable, double start, double stop,
                            std::size_t points, const SweepFlags& flags,
                            const pudisc::ScenarioParams& params) {
    return pudisc::SweepSpec{variable, flags.start.value_or(start), flags.stop.value_or(stop),
                             flags.points.value_or(points), params};
}

std::vector<pudisc::ComplexAmplitude> parse_programs(const std::string& text) {
    std::vector<pudisc::ComplexAmplitude> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(pudisc::parse_polar(item).amplitude());
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator of a programmable unambiguous discriminator of coherent states"};
    app.set_config("--config", "", "key=value configuration file");
    app.require_subcommand(1);
    app.fallthrough();

    pudisc::ScenarioParams params;
    std::string alpha1_text;
    std::string alpha2_text;
    std::string out_path = "-";
    std::string format_text = "csv";

    app.add_option("--t0", params.t0, "Transmittance of the input splitter BS0")
        ->capture_default_str();
    app.add_option("--eta1", params.eta1, "Efficiency of detector D1")->capture_default_str();
    app.add_option("--eta2", params.eta2, "Efficiency of detector D2")->capture_default_str();
    app.add_option("--dark", params.dark, "Mean dark counts per coincidence window")
        ->capture_default_str();
    app.add_option("--vis1", params.vis1, "Visibility of interferometer 1 (all arms for N states)")
        ->capture_default_str();
    app.add_option("--vis2", params.vis2, "Visibility of interferometer 2")->capture_default_str();
    auto* alpha1_opt =
        app.add_option("--alpha1", alpha1_text, "Program state 1 as photons:degrees");
    auto* alpha2_opt =
        app.add_option("--alpha2", alpha2_text, "Program state 2 as photons:degrees");
    app.add_option("--trials", params.trials_per_block, "Trials per measurement block")
        ->capture_default_str();
    app.add_option("--blocks", params.blocks, "Measurement blocks per point")
        ->capture_default_str();
    app.add_option("--seed", params.seed, "Random seed")->capture_default_str();
    app.add_option("--workers", params.workers, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--out", out_path, "Output file ('-' for stdout)")->capture_default_str();
    app.add_option("--format", format_text, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}))
        ->capture_default_str();
    app.add_option("--drift-sigma", params.drift_sigma, "Phase drift per block (rad)")
        ->capture_default_str();
    app.add_flag("--stabilize", params.stabilizer.enabled, "Enable dither-and-lock stabilization");
    app.add_option("--probe-trials", params.stabilizer.probe_trials,
                   "Calibration pulses per dither point")
        ->capture_default_str();
    app.add_option("--dither", params.stabilizer.dither, "Stabilizer dither (rad)")
        ->capture_default_str();
    app.add_option("--gain", params.stabilizer.gain, "Stabilizer loop gain")->capture_default_str();

    SweepFlags phase_flags, intensity_flags, ratio_flags, nsweep_flags;
    auto* phase_cmd = app.add_subcommand("phase", "Sweep the phase difference (degrees)");
    add_sweep_flags(phase_cmd, phase_flags);
    auto* intensity_cmd = app.add_subcommand("intensity", "Sweep the common intensity |a|^2");
    add_sweep_flags(intensity_cmd, intensity_flags);
    auto* ratio_cmd = app.add_subcommand("ratio", "Sweep the intensity ratio |a2|^2/|a1|^2");
    add_sweep_flags(ratio_cmd, ratio_flags);
    auto* nsweep_cmd = app.add_subcommand("nsweep", "Sweep the number of program states");
    add_sweep_flags(nsweep_cmd, nsweep_flags);

    std::size_t nstate_n = 3;
    std::string programs_text;
    auto* nstate_cmd = app.add_subcommand("nstate", "Per-hypothesis report for N program states");
    nstate_cmd->add_option("--n", nstate_n, "Number of program states on a ring of |a1|^2")
        ->capture_default_str();
    nstate_cmd->add_option("--programs", programs_text,
                           "Explicit program list 'n:deg,n:deg,...' (overrides --n)");

    std::string preset_name;
    auto* preset_cmd = app.add_subcommand("preset", "Regenerate a figure preset");
    preset_cmd->add_option("name", preset_name, "fig3, fig4, fig5, fig6 or nstates")
        ->required()
        ->check(CLI::IsMember(pudisc::preset_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!alpha1_text.empty()) {
            params.alpha1 = pudisc::parse_polar(alpha1_text);
        }
        if (!alpha2_text.empty()) {
            params.alpha2 = pudisc::parse_polar(alpha2_text);
        }
        if (pudisc::derive_plan(params.t0).degenerate()) {
            std::cerr << "warning: t0=" << params.t0 << " leaves one detector without light\n";
        }

        pudisc::Table table;
        using pudisc::SweepVariable;
        if (*phase_cmd) {
            table = pudisc::sweep_phase(make_spec(SweepVariable::kPhaseDifference, 0.0, 360.0, 37,
                                                  phase_flags, params));
        } else if (*intensity_cmd) {
            table = pudisc::sweep_intensity(
                make_spec(SweepVariable::kIntensity, 0.0, 3.0, 31, intensity_flags, params));
        } else if (*ratio_cmd) {
            table = pudisc::sweep_ratio(
                make_spec(SweepVariable::kIntensityRatio, 0.0, 4.0, 41, ratio_flags, params));
        } else if (*nsweep_cmd) {
            table = pudisc::sweep_nstates(
                make_spec(SweepVariable::kNStates, 2.0, 8.0, 7, nsweep_flags, params));
        } else if (*nstate_cmd) {
            const auto programs = programs_text.empty()
                                      ? pudisc::ring_programs(nstate_n, params.alpha1.mean_photons)
                                      : parse_programs(programs_text);
            table = pudisc::nstate_report(programs, params);
        } else {
            if (preset_name == "fig4" && (alpha1_opt->count() == 0 || alpha2_opt->count() == 0)) {
                std::cerr << "error: preset fig4 needs both --alpha1 and --alpha2\n";
                return kExitUsage;
            }
            table = pudisc::run_preset(preset_name, params);
        }

        pudisc::check_table(table);
        const auto format = pudisc::parse_format(format_text);
        if (out_path == "-") {
            if (format == pudisc::Format::kCsv) {
                pudisc::write_csv(table, std::cout);
            } else {
                pudisc::write_svg(table, std::cout);
            }
            std::cout.flush();
            if (!std::cout) {
                std::cerr << "error: failed writing to stdout\n";
                return kExitIo;
            }
        } else {
            pudisc::emit(table, format, out_path);
        }
    } catch (const pudisc::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pudisc::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
