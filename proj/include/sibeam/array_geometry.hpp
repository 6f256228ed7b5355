// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace sibeam {

using Complex = std::complex<double>;
using PhaseVector = std::vector<Complex>;

constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Geometry of a rectangular antenna (sub-)array. A linear array is the
/// degenerate case size_y == 1 (or size_x == 1). Spacing is a multiple of
/// the carrier wavelength; 0.5 is the usual half-wavelength grid.
struct ArrayLayout {
    int size_x = 1;
    int size_y = 1;
    double spacing = 0.5;

    int element_count() const { return size_x * size_y; }

    void validate() const {
        if (size_x < 1 || size_y < 1)
            throw std::invalid_argument("ArrayLayout: element counts must be >= 1, got " +
                                        std::to_string(size_x) + "x" + std::to_string(size_y));
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("ArrayLayout: spacing must be positive and finite");
    }

    bool operator==(const ArrayLayout&) const = default;
};

/// Beam direction as elevation/azimuth, stored in radians.
struct SteeringAngles {
    double elevation_rad = 0.0;
    double azimuth_rad = 0.0;

    bool operator==(const SteeringAngles&) const = default;
};

namespace detail {

inline void require_finite(const SteeringAngles& angles) {
    if (!std::isfinite(angles.elevation_rad) || !std::isfinite(angles.azimuth_rad))
        throw std::invalid_argument("SteeringAngles: angles must be finite");
}

} // namespace detail

// Element ordering convention used everywhere in this library: the element
// with grid coordinates (k, l) -- k along x, l along y -- sits at flat index
// l * size_x + k, i.e. the x index varies fastest. Channel tensors and gain
// vectors must follow the same ordering.
inline int element_index(const ArrayLayout& layout, int k, int l) {
    return l * layout.size_x + k;
}

/// Unit-modulus phase response (steering vector) of a rectangular array
/// toward the given direction. Separable in the two axes: the entry for
/// element (k, l) is exp(j*2*pi*d*(k*sin(el)*cos(az) + l*sin(el)*sin(az))).
inline PhaseVector phase_response(const ArrayLayout& layout, const SteeringAngles& angles) {
    layout.validate();
    detail::require_finite(angles);

    const double two_pi_d = 2.0 * std::numbers::pi * layout.spacing;
    const double sin_el = std::sin(angles.elevation_rad);
    const double ux = two_pi_d * sin_el * std::cos(angles.azimuth_rad);
    const double uy = two_pi_d * sin_el * std::sin(angles.azimuth_rad);

    PhaseVector out(static_cast<std::size_t>(layout.element_count()));
    for (int l = 0; l < layout.size_y; ++l)
        for (int k = 0; k < layout.size_x; ++k)
            out[static_cast<std::size_t>(element_index(layout, k, l))] =
                std::polar(1.0, k * ux + l * uy);
    return out;
}

/// Elementwise complex conjugate; gives the uplink (receive) phase response
/// from the downlink one.
inline PhaseVector conjugate_response(const PhaseVector& v) {
    PhaseVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[i]);
    return out;
}

} // namespace sibeam
