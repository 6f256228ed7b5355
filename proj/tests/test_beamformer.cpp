// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "sibeam/beamformer.hpp"

using namespace sibeam;

namespace {

const SteeringAngles kBroadside{deg_to_rad(90.0), deg_to_rad(90.0)};

GainVector unit_gains(int n) { return GainVector(static_cast<std::size_t>(n), 1.0); }

} // namespace

TEST_CASE("tx beam with flat phases and unit gains") {
    const BeamWeights beam = build_tx_beam({2, 2, 0.5}, {0.0, 0.0}, unit_gains(4));
    for (const Complex& w : beam.weights) CHECK(std::abs(w - Complex{0.5, 0.0}) < 1e-15);
}

TEST_CASE("zero gains give the zero beam") {
    const BeamWeights beam = build_tx_beam({3, 2, 0.5}, {1.0, 2.0}, GainVector(6, 0.0));
    for (const Complex& w : beam.weights) CHECK(std::abs(w) == 0.0);
}

TEST_CASE("tx beam with mixed gains at broadside") {
    const BeamWeights beam = build_tx_beam({2, 2, 0.5}, kBroadside, {1.0, 0.5, 1.0, 0.5});
    REQUIRE(beam.weights.size() == 4);
    CHECK(std::abs(beam.weights[0] - Complex{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[1] - Complex{0.25, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[2] - Complex{-0.5, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[3] - Complex{-0.25, 0.0}) < 1e-12);
}

TEST_CASE("rx beam is the conjugate of the tx beam") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> gain(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const ArrayLayout layout{3, 2, 0.5};
        const SteeringAngles a{angle(rng), angle(rng)};
        GainVector g(6);
        for (double& v : g) v = gain(rng);
        const BeamWeights tx = build_tx_beam(layout, a, g);
        const BeamWeights rx = build_rx_beam(layout, a, g);
        for (std::size_t i = 0; i < tx.weights.size(); ++i)
            CHECK(std::abs(rx.weights[i] - std::conj(tx.weights[i])) == 0.0);
    }
}

TEST_CASE("rx beam at broadside with unit gains") {
    const BeamWeights beam = build_rx_beam({2, 2, 0.5}, kBroadside, unit_gains(4));
    CHECK(std::abs(beam.weights[0] - Complex{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[1] - Complex{0.5, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[2] - Complex{-0.5, 0.0}) < 1e-12);
    CHECK(std::abs(beam.weights[3] - Complex{-0.5, 0.0}) < 1e-12);
}

TEST_CASE("gain vector must match the layout") {
    CHECK_THROWS_AS(build_tx_beam({2, 2, 0.5}, {0.0, 0.0}, unit_gains(3)), std::invalid_argument);
    CHECK_THROWS_AS(build_rx_beam({4, 1, 0.5}, {0.0, 0.0}, unit_gains(5)), std::invalid_argument);
}

TEST_CASE("directivity reaches the element count at exact steering") {
    const BeamWeights tx = build_tx_beam({2, 2, 0.5}, kBroadside, unit_gains(4));
    CHECK(directivity(tx, kBroadside) == Catch::Approx(4.0).epsilon(1e-12));
    const BeamWeights rx = build_rx_beam({2, 2, 0.5}, kBroadside, unit_gains(4));
    CHECK(directivity(rx, kBroadside) == Catch::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("zero gains have zero directivity everywhere") {
    const BeamWeights beam = build_tx_beam({2, 2, 0.5}, kBroadside, GainVector(4, 0.0));
    for (double el : {0.0, 0.4, 1.2}) CHECK(directivity(beam, {el, 1.0}) == 0.0);
}

TEST_CASE("broadside 2x2 beam nulls toward zero elevation") {
    const BeamWeights beam = build_tx_beam({2, 2, 0.5}, kBroadside, unit_gains(4));
    // weights are [0.5, 0.5, -0.5, -0.5]; toward elevation 0 the response is
    // their plain sum
    CHECK(directivity(beam, {0.0, 0.7}) == Catch::Approx(0.0).margin(1e-24));
}

TEST_CASE("directivity never exceeds the element count") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> size(1, 5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> gain(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const ArrayLayout layout{size(rng), size(rng), 0.5};
        GainVector g(static_cast<std::size_t>(layout.element_count()));
        for (double& v : g) v = gain(rng);
        const SteeringAngles steer{angle(rng), angle(rng)};
        const BeamWeights beam = (trial % 2 == 0) ? build_tx_beam(layout, steer, g)
                                                  : build_rx_beam(layout, steer, g);
        const double m = layout.element_count();
        CHECK(directivity(beam, {angle(rng), angle(rng)}) <= m + 1e-9);
        CHECK(directivity_degradation(beam, {angle(rng), angle(rng)}) >= -1e-9);
    }
}

TEST_CASE("directivity scales with the square of a uniform gain factor") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> gain(0.0, 1.0);
    const ArrayLayout layout{3, 3, 0.5};
    for (int trial = 0; trial < 50; ++trial) {
        GainVector g(9);
        for (double& v : g) v = gain(rng);
        const double c = gain(rng);
        GainVector scaled = g;
        for (double& v : scaled) v *= c;
        const SteeringAngles steer{angle(rng), angle(rng)};
        const SteeringAngles at{angle(rng), angle(rng)};
        const double base = directivity(build_tx_beam(layout, steer, g), at);
        const double got = directivity(build_tx_beam(layout, steer, scaled), at);
        CHECK(got == Catch::Approx(c * c * base).margin(1e-12));
    }
}

TEST_CASE("degradation at exact steering") {
    const ArrayLayout layout{2, 3, 0.5};
    const SteeringAngles steer{1.1, 0.3};
    const int m = layout.element_count();

    const BeamWeights full = build_tx_beam(layout, steer, unit_gains(m));
    CHECK(directivity_degradation(full, steer) == Catch::Approx(0.0).margin(1e-12));

    const BeamWeights off = build_tx_beam(layout, steer, GainVector(6, 0.0));
    CHECK(directivity_degradation(off, steer) == Catch::Approx(m).epsilon(1e-12));

    // uniform gain g at exact steering degrades by m * (1 - g^2)
    for (double g : {0.2, 0.5, 0.9}) {
        const BeamWeights beam = build_tx_beam(layout, steer, GainVector(6, g));
        CHECK(directivity_degradation(beam, steer) ==
              Catch::Approx(m * (1.0 - g * g)).margin(1e-10));
        const BeamWeights rx = build_rx_beam(layout, steer, GainVector(6, g));
        CHECK(directivity_degradation(rx, steer) ==
              Catch::Approx(m * (1.0 - g * g)).margin(1e-10));
    }
}
