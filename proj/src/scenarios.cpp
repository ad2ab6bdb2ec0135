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

#include "pudisc/scenarios.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pudisc/detection.hpp"
#include "pudisc/errors.hpp"
#include "pudisc/rng.hpp"

namespace pudisc {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;
constexpr double kFig6FirstIntensity = 1.33;

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" +
                                    std::string(text) + "'");
    }
    return value;
}

RunOptions run_options(const ScenarioParams& p) { return RunOptions{p.workers}; }

// One measurement per true hypothesis, as in the experiment: the unknown is
// set to program j for a whole run and fractions are taken over that run.
struct ConditionalRuns {
    std::vector<ExperimentResult> runs;
};

ConditionalRuns run_conditional(ExperimentConfig cfg, const ScenarioParams& p,
                                std::uint64_t tag) {
    ConditionalRuns out;
    const std::size_t n = cfg.states();
    for (std::size_t k = 0; k < n; ++k) {
        cfg.priors.assign(n, 0.0);
        cfg.priors[k] = 1.0;
        cfg.seed = rng::derive_seed(p.seed, tag * 64 + k);
        out.runs.push_back(run_experiment(cfg, run_options(p)));
    }
    return out;
}

std::vector<double> two_state_row(double x, ComplexAmplitude a1, ComplexAmplitude a2,
                                  const ScenarioParams& p, std::uint64_t tag) {
    const auto both = run_conditional(p.two_state(a1, a2), p, tag);
    const Fractions& f1 = both.runs[0].fractions;
    const Fractions& f2 = both.runs[1].fractions;
    return {x,
            f1.p_plus[0],
            f1.p_minus[0],
            f2.p_plus[1],
            f2.p_minus[1],
            0.5 * (f1.p_inconclusive + f2.p_inconclusive),
            analytic_p1(a1, a2, p.t0, p.eta2),
            analytic_p2(a1, a2, p.t0, p.eta1),
            f1.stderr_plus[0],
            f1.stderr_minus[0],
            f2.stderr_plus[1],
            f2.stderr_minus[1],
            0.5 * std::hypot(f1.stderr_inconclusive, f2.stderr_inconclusive)};
}

Table two_state_table(std::string title) {
    Table t;
    t.title = std::move(title);
    t.columns = result_row_columns();
    return t;
}

void require_variable(const SweepSpec& spec, SweepVariable v) {
    spec.validate();
    if (spec.variable != v) {
        throw std::invalid_argument("sweep variable does not match the requested sweep");
    }
}

double relative_phase_deg(const ScenarioParams& p) {
    return p.alpha2.phase_deg - p.alpha1.phase_deg;
}

Table with_series(const std::string& name, double value, Table t) {
    t.series_column = name;
    t.columns.insert(t.columns.begin(), name);
    for (auto& row : t.rows) {
        row.insert(row.begin(), value);
    }
    return t;
}

void append_rows(Table& into, const Table& from) {
    if (into.columns.empty()) {
        into.columns = from.columns;
        into.series_column = from.series_column;
    }
    into.rows.insert(into.rows.end(), from.rows.begin(), from.rows.end());
}

}  // namespace

ComplexAmplitude PolarState::amplitude() const {
    return from_intensity_phase(mean_photons, phase_deg * kDegree);
}

PolarState parse_polar(std::string_view text) {
    const auto colon = text.find(':');
    PolarState s;
    s.mean_photons = parse_double(text.substr(0, colon), "mean photon number");
    s.phase_deg = colon == std::string_view::npos
                      ? 0.0
                      : parse_double(text.substr(colon + 1), "phase in degrees");
    if (s.mean_photons < 0.0) {
        throw std::invalid_argument("mean photon number must be non-negative");
    }
    return s;
}

ExperimentConfig ScenarioParams::two_state(ComplexAmplitude alpha_1,
                                           ComplexAmplitude alpha_2) const {
    ExperimentConfig cfg;
    cfg.programs = {alpha_1, alpha_2};
    cfg.network = derive_plan(t0);
    cfg.detectors = {DetectorModel{eta1, dark}, DetectorModel{eta2, dark}};
    cfg.interference = {InterferenceModel{vis1}, InterferenceModel{vis2}};
    cfg.trials_per_block = trials_per_block;
    cfg.blocks = blocks;
    cfg.seed = seed;
    cfg.drift = DriftModel{drift_sigma};
    cfg.stabilizer = stabilizer;
    return cfg;
}

ExperimentConfig ScenarioParams::nstate(std::vector<ComplexAmplitude> programs) const {
    ExperimentConfig cfg =
        make_nstate_config(std::move(programs), DetectorModel{eta1, dark}, InterferenceModel{vis1});
    cfg.trials_per_block = trials_per_block;
    cfg.blocks = blocks;
    cfg.seed = seed;
    cfg.drift = DriftModel{drift_sigma};
    cfg.stabilizer = stabilizer;
    return cfg;
}

void SweepSpec::validate() const {
    if (points < 2) {
        throw std::invalid_argument("a sweep needs at least 2 points");
    }
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw std::invalid_argument("sweep range must be finite");
    }
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = i + 1 == points ? stop
                                : start + (stop - start) * static_cast<double>(i) /
                                              static_cast<double>(points - 1);
    }
    return xs;
}

const std::vector<std::string>& result_row_columns() {
    static const std::vector<std::string> columns = {
        "x",           "p_plus_1",      "p_minus_1",      "p_plus_2",       "p_minus_2",
        "p_inconclusive", "analytic_p1", "analytic_p2",  "stderr_plus_1",  "stderr_minus_1",
        "stderr_plus_2", "stderr_minus_2", "stderr_inconclusive"};
    return columns;
}

Table sweep_phase(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::kPhaseDifference);
    const ScenarioParams& p = spec.params;
    Table t = two_state_table("conclusive fractions vs phase difference (deg)");
    const auto xs = spec.grid();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const ComplexAmplitude a1 = p.alpha1.amplitude();
        const ComplexAmplitude a2 = from_intensity_phase(
            p.alpha2.mean_photons, (p.alpha1.phase_deg + xs[i]) * kDegree);
        t.rows.push_back(two_state_row(xs[i], a1, a2, p, i));
    }
    return t;
}

Table sweep_intensity(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::kIntensity);
    const ScenarioParams& p = spec.params;
    Table t = two_state_table("conclusive fractions vs intensity (photons/pulse)");
    t.columns.push_back("analytic_ideal_p1");
    t.columns.push_back("analytic_ideal_p2");
    const double delta = relative_phase_deg(p);
    const auto xs = spec.grid();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0.0) {
            throw std::invalid_argument("intensity sweep range must be non-negative");
        }
        const ComplexAmplitude a1 = from_intensity_phase(xs[i], p.alpha1.phase_deg * kDegree);
        const ComplexAmplitude a2 =
            from_intensity_phase(xs[i], (p.alpha1.phase_deg + delta) * kDegree);
        auto row = two_state_row(xs[i], a1, a2, p, i);
        row.push_back(analytic_p1(a1, a2, p.t0, 1.0));
        row.push_back(analytic_p2(a1, a2, p.t0, 1.0));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table sweep_ratio(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::kIntensityRatio);
    const ScenarioParams& p = spec.params;
    Table t = two_state_table("conclusive fractions vs intensity ratio |a2|^2/|a1|^2");
    t.columns.push_back("analytic_180");
    t.columns.push_back("analytic_0");
    const double delta = relative_phase_deg(p);
    const double first = p.alpha1.mean_photons;
    const double phi1 = p.alpha1.phase_deg * kDegree;
    const ComplexAmplitude a1 = p.alpha1.amplitude();
    auto mean_success = [&](ComplexAmplitude b) {
        return 0.5 * (analytic_p1(a1, b, p.t0, p.eta2) + analytic_p2(a1, b, p.t0, p.eta1));
    };
    const auto xs = spec.grid();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 0.0) {
            throw std::invalid_argument("intensity ratio range must be non-negative");
        }
        const double second = xs[i] * first;
        const ComplexAmplitude a2 = from_intensity_phase(second, phi1 + delta * kDegree);
        auto row = two_state_row(xs[i], a1, a2, p, i);
        row.push_back(mean_success(from_intensity_phase(second, phi1 + std::numbers::pi)));
        row.push_back(mean_success(from_intensity_phase(second, phi1)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<ComplexAmplitude> ring_programs(std::size_t n, double mean_photons) {
    std::vector<ComplexAmplitude> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.push_back(from_intensity_phase(
            mean_photons, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
    }
    return out;
}

Table nstate_report(const std::vector<ComplexAmplitude>& programs, const ScenarioParams& params) {
    const ExperimentConfig cfg = params.nstate(programs);
    const NStatePlan& plan = std::get<NStatePlan>(cfg.network);
    const DetectorModel ideal_dark{params.eta1, 0.0};

    Table t;
    t.title = "per-hypothesis success, " + std::to_string(programs.size()) + " program states";
    t.columns = {"hypothesis",     "analytic_success", "p_correct",         "p_error",
                 "p_inconclusive", "stderr_correct",   "stderr_error",      "stderr_inconclusive"};
    const auto runs = run_conditional(cfg, params, 0);
    for (std::size_t k = 0; k < programs.size(); ++k) {
        const Fractions& f = runs.runs[k].fractions;
        t.rows.push_back({static_cast<double>(k + 1), analytic_nstate_success(programs, k, plan,
                                                                              ideal_dark),
                          f.p_plus[k], f.p_minus[k], f.p_inconclusive, f.stderr_plus[k],
                          f.stderr_minus[k], f.stderr_inconclusive});
    }
    return t;
}

Table sweep_nstates(const SweepSpec& spec) {
    require_variable(spec, SweepVariable::kNStates);
    const ScenarioParams& p = spec.params;
    const auto lo = static_cast<long long>(std::llround(spec.start));
    const auto hi = static_cast<long long>(std::llround(spec.stop));
    if (lo < 2 || hi < lo || hi > static_cast<long long>(NStatePlan::kMaxStates)) {
        throw std::invalid_argument("n_states range must satisfy 2 <= start <= stop <= 64");
    }
    Table t;
    t.title = "success vs number of program states (ring, fixed intensity)";
    t.columns = {"n",          "analytic_success", "p_correct",           "p_error",
                 "p_inconclusive", "stderr_correct", "stderr_error", "stderr_inconclusive"};
    for (long long n = lo; n <= hi; ++n) {
        ExperimentConfig cfg =
            p.nstate(ring_programs(static_cast<std::size_t>(n), p.alpha1.mean_photons));
        cfg.seed = rng::derive_seed(p.seed, static_cast<std::uint64_t>(n));
        ExperimentConfig ideal = cfg;
        for (auto& d : ideal.detectors) {
            d.dark_mean = 0.0;
        }
        const ExperimentResult r = run_experiment(cfg, run_options(p));
        const Fractions& f = r.fractions;
        auto sum_sq = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double e : v) {
                s += e * e;
            }
            return std::sqrt(s);
        };
        t.rows.push_back({static_cast<double>(n), expected_conclusive(ideal),
                          std::accumulate(f.p_plus.begin(), f.p_plus.end(), 0.0),
                          std::accumulate(f.p_minus.begin(), f.p_minus.end(), 0.0),
                          f.p_inconclusive, sum_sq(f.stderr_plus), sum_sq(f.stderr_minus),
                          f.stderr_inconclusive});
    }
    return t;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig3", "fig4", "fig5", "fig6", "nstates"};
    return names;
}

Table run_preset(std::string_view name, const ScenarioParams& params) {
    if (name == "fig3") {
        // Illustrative intensities; the text does not label the three curves.
        Table out;
        out.title = "fig3: fractions vs phase difference, equal intensities";
        std::uint64_t series = 0;
        for (double intensity : {0.25, 0.5, 1.0}) {
            SweepSpec spec{SweepVariable::kPhaseDifference, 0.0, 360.0, 37, params};
            spec.params.alpha1 = {intensity, 0.0};
            spec.params.alpha2 = {intensity, 0.0};
            spec.params.seed = rng::derive_seed(params.seed, ++series);
            append_rows(out, with_series("intensity", intensity, sweep_phase(spec)));
        }
        return out;
    }
    if (name == "fig4") {
        SweepSpec spec{SweepVariable::kPhaseDifference, 0.0, 360.0, 37, params};
        Table t = sweep_phase(spec);
        t.title = "fig4: fractions vs phase difference, unequal intensities";
        return t;
    }
    if (name == "fig5") {
        SweepSpec spec{SweepVariable::kIntensity, 0.0, 3.0, 31, params};
        spec.params.alpha1.phase_deg = 0.0;
        spec.params.alpha2.phase_deg = 180.0;
        Table t = sweep_intensity(spec);
        t.title = "fig5: conclusive probability vs intensity, 180 deg";
        return t;
    }
    if (name == "fig6") {
        Table out;
        out.title = "fig6: conclusive probability vs intensity ratio, |a1|^2 = 1.33";
        for (double phase : {180.0, 0.0}) {
            SweepSpec spec{SweepVariable::kIntensityRatio, 0.0, 4.0, 41, params};
            spec.params.alpha1 = {kFig6FirstIntensity, 0.0};
            spec.params.alpha2 = {kFig6FirstIntensity, phase};
            spec.params.seed = rng::derive_seed(params.seed, static_cast<std::uint64_t>(phase) + 1);
            append_rows(out, with_series("phase_deg", phase, sweep_ratio(spec)));
        }
        return out;
    }
    if (name == "nstates") {
        SweepSpec spec{SweepVariable::kNStates, 2.0, 8.0, 7, params};
        return sweep_nstates(spec);
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

void check_table(const Table& table) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw InvariantError("row width does not match the header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string& name = table.columns[c];
            if (!std::isfinite(row[c])) {
                throw InvariantError("non-finite value in column " + name);
            }
            const bool probability = name.rfind("p_", 0) == 0 || name.rfind("analytic", 0) == 0;
            if (probability && (row[c] < 0.0 || row[c] > 1.0)) {
                throw InvariantError("value outside [0,1] in column " + name);
            }
        }
    }
}

}  // namespace pudisc
