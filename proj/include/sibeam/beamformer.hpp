// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sibeam/array_geometry.hpp"

namespace sibeam {

/// Per-element gain controller values, expected in [0, 1].
using GainVector = std::vector<double>;

/// Which RF chain the beam belongs to. Transmit beams are built on the plain
/// phase response, receive beams on its conjugate; the directivity bilinear
/// form differs accordingly.
enum class BeamSide { tx, rx };

/// A gain-controlled RF beamformer for one sub-array: the normalized phase
/// response Hadamard-multiplied by the gain vector. With gains in [0, 1]
/// every weight has modulus at most 1/sqrt(m).
struct BeamWeights {
    std::vector<Complex> weights;
    ArrayLayout layout;
    SteeringAngles steer;
    BeamSide side = BeamSide::tx;
};

namespace detail {

inline BeamWeights build_beam(const ArrayLayout& layout, const SteeringAngles& angles,
                              const GainVector& gains, BeamSide side) {
    layout.validate();
    if (static_cast<int>(gains.size()) != layout.element_count())
        throw std::invalid_argument("beamformer: gain vector has " + std::to_string(gains.size()) +
                                    " entries, layout has " + std::to_string(layout.element_count()) +
                                    " elements");
    PhaseVector phases = phase_response(layout, angles);
    if (side == BeamSide::rx) phases = conjugate_response(phases);

    const double norm = 1.0 / std::sqrt(static_cast<double>(layout.element_count()));
    BeamWeights beam{{}, layout, angles, side};
    beam.weights.resize(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) beam.weights[i] = norm * gains[i] * phases[i];
    return beam;
}

} // namespace detail

/// Downlink (transmit) RF beamformer.
inline BeamWeights build_tx_beam(const ArrayLayout& layout, const SteeringAngles& angles,
                                 const GainVector& gains) {
    return detail::build_beam(layout, angles, gains, BeamSide::tx);
}

/// Uplink (receive) RF beamformer; identical construction on the conjugated
/// phase response.
inline BeamWeights build_rx_beam(const ArrayLayout& layout, const SteeringAngles& angles,
                                 const GainVector& gains) {
    return detail::build_beam(layout, angles, gains, BeamSide::rx);
}

/// Array gain of the beam toward a direction. For a transmit beam this is
/// |phi(at)^H w|^2 (far-field response); for a receive beam it is
/// |w^T phi(at)|^2 (combiner output for an incoming plane wave). With exact
/// steering and unit gains both reach the element count m.
inline double directivity(const BeamWeights& beam, const SteeringAngles& at) {
    const PhaseVector phi = phase_response(beam.layout, at);
    Complex acc{0.0, 0.0};
    if (beam.side == BeamSide::tx) {
        for (std::size_t i = 0; i < phi.size(); ++i) acc += std::conj(phi[i]) * beam.weights[i];
    } else {
        for (std::size_t i = 0; i < phi.size(); ++i) acc += phi[i] * beam.weights[i];
    }
    return std::norm(acc);
}

/// Gap between the maximum achievable array gain m and the gain this beam
/// realizes toward the nominal direction. Feasible beams keep it below the
/// configured slack epsilon.
inline double directivity_degradation(const BeamWeights& beam, const SteeringAngles& nominal) {
    return static_cast<double>(beam.layout.element_count()) - directivity(beam, nominal);
}

} // namespace sibeam
