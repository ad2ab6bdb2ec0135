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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pudisc/core_optics.hpp"
#include "pudisc/errors.hpp"

using namespace pudisc;

namespace {
constexpr double kPi = std::numbers::pi;

bool close(ComplexAmplitude a, ComplexAmplitude b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}
}  // namespace

TEST_CASE("bs_transform identity and balanced split") {
    auto out = bs_transform({1.0, 0.0}, 0.0, BeamSplitter(1.0));
    CHECK(close(out.a, {1.0, 0.0}));
    CHECK(close(out.b, 0.0));

    out = bs_transform({1.0, 0.0}, 0.0, BeamSplitter(0.5));
    CHECK(close(out.a, {std::sqrt(0.5), 0.0}));
    CHECK(close(out.b, {0.0, std::sqrt(0.5)}));
    CHECK(intensity(out.a) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(intensity(out.b) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("beam splitter rejects transmittance outside [0,1]") {
    CHECK_THROWS_AS(BeamSplitter(-0.01), DomainError);
    CHECK_THROWS_AS(BeamSplitter(1.0001), DomainError);
    CHECK_THROWS_AS(BeamSplitter(std::nan("")), DomainError);
    CHECK(BeamSplitter(0.3).reflectance() == doctest::Approx(0.7));
}

TEST_CASE("bs_transform conserves energy for random inputs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> t(0.0, 1.0);
    std::normal_distribution<double> field(0.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        const ComplexAmplitude a{field(gen), field(gen)};
        const ComplexAmplitude b{field(gen), field(gen)};
        const auto out = bs_transform(a, b, BeamSplitter(t(gen)));
        const double in_energy = intensity(a) + intensity(b);
        const double out_energy = intensity(out.a) + intensity(out.b);
        REQUIRE(std::abs(out_energy - in_energy) <= 1e-12 * in_energy);
    }
}

TEST_CASE("cascaded balanced splitters form a Mach-Zehnder") {
    const BeamSplitter half(0.5);
    const ComplexAmplitude a{0.8, -0.3};
    const ComplexAmplitude b{-0.2, 1.1};

    // Equal arms: the two inputs swap ports.
    auto mid = bs_transform(a, b, half);
    auto out = bs_transform(mid.a, mid.b, half);
    CHECK(intensity(out.a) == doctest::Approx(intensity(b)).epsilon(1e-12));
    CHECK(intensity(out.b) == doctest::Approx(intensity(a)).epsilon(1e-12));

    // A pi shift on one arm: each input leaves by its own port.
    mid = bs_transform(a, b, half);
    out = bs_transform(apply_phase(mid.a, kPi), mid.b, half);
    CHECK(intensity(out.a) == doctest::Approx(intensity(a)).epsilon(1e-12));
    CHECK(intensity(out.b) == doctest::Approx(intensity(b)).epsilon(1e-12));
}

TEST_CASE("apply_phase") {
    CHECK(close(apply_phase({1.0, 0.0}, kPi), {-1.0, 0.0}));
    CHECK(apply_phase({1.0, 0.0}, 0.0) == ComplexAmplitude{1.0, 0.0});

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const ComplexAmplitude a{u(gen), u(gen)};
        const double x = u(gen);
        const double y = u(gen);
        CHECK(intensity(apply_phase(a, x)) == doctest::Approx(intensity(a)).epsilon(1e-13));
        CHECK(close(apply_phase(apply_phase(a, x), y), apply_phase(a, x + y),
                    1e-12 * std::max(1.0, std::abs(a))));
    }
}

TEST_CASE("from_intensity_phase") {
    const auto a = from_intensity_phase(1.33, 0.0);
    CHECK(a.real() == doctest::Approx(1.1533).epsilon(1e-4));
    CHECK(a.imag() == 0.0);
    CHECK(intensity(a) == doctest::Approx(1.33).epsilon(1e-15));
    CHECK(from_intensity_phase(0.0, 1.234) == ComplexAmplitude{0.0, 0.0});
    CHECK(close(from_intensity_phase(4.0, kPi), {-2.0, 0.0}));
    CHECK_THROWS_AS(from_intensity_phase(-1e-9, 0.0), DomainError);
}
