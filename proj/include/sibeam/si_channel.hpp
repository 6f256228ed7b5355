// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "sibeam/array_geometry.hpp"

namespace sibeam {

/// Frequency-sampled coupling tensor between the receive and transmit arrays
/// of a co-located full-duplex node. Entry (u, d, n) couples Rx element u to
/// Tx element d at grid frequency n; storage is row-major [rx][tx][freq].
/// Element indices follow the library's flat ordering (x index fastest).
struct SiChannel {
    std::vector<Complex> tensor;
    std::vector<double> freqs_hz;
    ArrayLayout rx_layout;
    ArrayLayout tx_layout;

    int rx_count() const { return rx_layout.element_count(); }
    int tx_count() const { return tx_layout.element_count(); }
    int freq_count() const { return static_cast<int>(freqs_hz.size()); }

    std::size_t flat_index(int rx, int tx, int freq) const {
        return (static_cast<std::size_t>(rx) * static_cast<std::size_t>(tx_count()) +
                static_cast<std::size_t>(tx)) *
                   freqs_hz.size() +
               static_cast<std::size_t>(freq);
    }

    const Complex& at(int rx, int tx, int freq) const { return tensor[flat_index(rx, tx, freq)]; }
    Complex& at(int rx, int tx, int freq) { return tensor[flat_index(rx, tx, freq)]; }

    void validate() const {
        rx_layout.validate();
        tx_layout.validate();
        if (freqs_hz.empty()) throw std::invalid_argument("SiChannel: empty frequency grid");
        for (std::size_t i = 1; i < freqs_hz.size(); ++i)
            if (!(freqs_hz[i] > freqs_hz[i - 1]))
                throw std::invalid_argument("SiChannel: frequency grid must be strictly increasing");
        const std::size_t expected = static_cast<std::size_t>(rx_count()) *
                                     static_cast<std::size_t>(tx_count()) * freqs_hz.size();
        if (tensor.size() != expected)
            throw std::invalid_argument("SiChannel: tensor has " + std::to_string(tensor.size()) +
                                        " entries, expected " + std::to_string(expected));
    }
};

/// A contiguous run of frequency-grid indices covering one operating band.
struct BandSlice {
    double center_hz = 0.0;
    double bandwidth_hz = 0.0;
    int first = 0; // index into freqs_hz
    int count = 0; // number of in-band samples
};

/// Selects every grid point inside [center - bw/2, center + bw/2]. On the
/// measurement grid of 1601 points per GHz, a 20 MHz band at 3.5 GHz picks
/// exactly 33 samples and a 100 MHz band picks 161.
inline BandSlice slice_band(const SiChannel& ch, double center_hz, double bandwidth_hz) {
    if (!(bandwidth_hz >= 0.0) || !std::isfinite(center_hz) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("slice_band: invalid band parameters");
    if (ch.freqs_hz.empty()) throw std::invalid_argument("slice_band: channel has no frequencies");

    const double lo = center_hz - bandwidth_hz / 2.0;
    const double hi = center_hz + bandwidth_hz / 2.0;
    if (hi < ch.freqs_hz.front() || lo > ch.freqs_hz.back())
        throw std::invalid_argument("slice_band: band [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] Hz lies outside the channel grid");

    int first = 0;
    while (first < ch.freq_count() && ch.freqs_hz[static_cast<std::size_t>(first)] < lo) ++first;
    int last = ch.freq_count() - 1;
    while (last >= 0 && ch.freqs_hz[static_cast<std::size_t>(last)] > hi) --last;
    if (last < first) throw std::invalid_argument("slice_band: no grid points inside the band");

    return BandSlice{center_hz, bandwidth_hz, first, last - first + 1};
}

/// Evenly spaced grid of n points from start to stop inclusive (the
/// measurement format: 1601 points across 3-4 GHz).
inline std::vector<double> linear_frequency_grid(double start_hz, double stop_hz, int points) {
    if (points < 1) throw std::invalid_argument("linear_frequency_grid: need at least one point");
    if (points == 1) {
        if (stop_hz != start_hz)
            throw std::invalid_argument("linear_frequency_grid: single point needs start == stop");
        return {start_hz};
    }
    if (!(stop_hz > start_hz))
        throw std::invalid_argument("linear_frequency_grid: stop must exceed start");
    const double step = (stop_hz - start_hz) / static_cast<double>(points - 1);
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start_hz + i * step;
    out.back() = stop_hz;
    return out;
}

/// Grid covering just one band at the measurement sample rate (625 kHz,
/// i.e. 1601 points per GHz). A 20 MHz band yields 33 points.
inline std::vector<double> band_frequency_grid(double center_hz, double bandwidth_hz,
                                               double spacing_hz = 625e3) {
    if (!(center_hz > 0.0)) throw std::invalid_argument("band_frequency_grid: bad center");
    if (!(bandwidth_hz >= 0.0) || !(spacing_hz > 0.0))
        throw std::invalid_argument("band_frequency_grid: bad band parameters");
    const int count = static_cast<int>(bandwidth_hz / spacing_hz + 1e-9) + 1;
    if (count == 1) return {center_hz};
    const double start = center_hz - bandwidth_hz / 2.0;
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + i * spacing_hz;
    return out;
}

/// Synthesizes a pure line-of-sight coupling channel between two parallel
/// planar arrays separated along the boresight axis. Element positions are
/// scaled by the wavelength at the grid's center frequency; the entry for a
/// Tx/Rx pair at distance r is (alpha / r) * exp(-j*2*pi*r*f/c).
inline SiChannel generate_los_channel(const ArrayLayout& tx_layout, const ArrayLayout& rx_layout,
                                      double separation_wavelengths, std::vector<double> freqs_hz,
                                      double amplitude_alpha) {
    tx_layout.validate();
    rx_layout.validate();
    if (!(separation_wavelengths > 0.0))
        throw std::invalid_argument("generate_los_channel: separation must be positive "
                                    "(coincident arrays would collide)");
    if (freqs_hz.empty()) throw std::invalid_argument("generate_los_channel: empty frequency grid");
    for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
        if (!(freqs_hz[i] > 0.0)) throw std::invalid_argument("generate_los_channel: frequencies must be positive");
        if (i > 0 && !(freqs_hz[i] > freqs_hz[i - 1]))
            throw std::invalid_argument("generate_los_channel: frequency grid must be strictly increasing");
    }

    const double center_hz = (freqs_hz.front() + freqs_hz.back()) / 2.0;
    const double wavelength_m = kSpeedOfLight / center_hz;
    const double sep_m = separation_wavelengths * wavelength_m;

    SiChannel ch;
    ch.tx_layout = tx_layout;
    ch.rx_layout = rx_layout;
    ch.freqs_hz = std::move(freqs_hz);
    const int mu = ch.rx_count(), md = ch.tx_count(), n = ch.freq_count();
    ch.tensor.resize(static_cast<std::size_t>(mu) * static_cast<std::size_t>(md) *
                     static_cast<std::size_t>(n));

    const double tx_dx = tx_layout.spacing * wavelength_m;
    const double rx_dx = rx_layout.spacing * wavelength_m;
    for (int u = 0; u < mu; ++u) {
        const double ux = (u % rx_layout.size_x) * rx_dx;
        const double uy = (u / rx_layout.size_x) * rx_dx;
        for (int d = 0; d < md; ++d) {
            const double dx = (d % tx_layout.size_x) * tx_dx;
            const double dy = (d / tx_layout.size_x) * tx_dx;
            const double r = std::sqrt((ux - dx) * (ux - dx) + (uy - dy) * (uy - dy) +
                                       sep_m * sep_m);
            const double amp = amplitude_alpha / r;
            for (int f = 0; f < n; ++f) {
                const double phase = -2.0 * std::numbers::pi * r *
                                     ch.freqs_hz[static_cast<std::size_t>(f)] / kSpeedOfLight;
                ch.at(u, d, f) = std::polar(amp, phase);
            }
        }
    }
    return ch;
}

/// Cuts the coupling tensor of one (rx block, tx block) pair out of the full
/// channel. Blocks are contiguous rectangular tiles; the tile grid follows
/// the same x-fastest ordering as elements, and tile dimensions must divide
/// the full array exactly.
inline SiChannel extract_subarray(const SiChannel& ch, int tx_block, int rx_block,
                                  const ArrayLayout& tx_sub, const ArrayLayout& rx_sub) {
    ch.validate();
    tx_sub.validate();
    rx_sub.validate();

    const auto check_partition = [](const ArrayLayout& full, const ArrayLayout& sub,
                                    const char* which) {
        if (full.size_x % sub.size_x != 0 || full.size_y % sub.size_y != 0)
            throw std::invalid_argument(std::string("extract_subarray: ") + which + " sub-array " +
                                        std::to_string(sub.size_x) + "x" + std::to_string(sub.size_y) +
                                        " does not tile the " + std::to_string(full.size_x) + "x" +
                                        std::to_string(full.size_y) + " array");
    };
    check_partition(ch.tx_layout, tx_sub, "tx");
    check_partition(ch.rx_layout, rx_sub, "rx");

    const int tx_tiles_x = ch.tx_layout.size_x / tx_sub.size_x;
    const int tx_tiles = tx_tiles_x * (ch.tx_layout.size_y / tx_sub.size_y);
    const int rx_tiles_x = ch.rx_layout.size_x / rx_sub.size_x;
    const int rx_tiles = rx_tiles_x * (ch.rx_layout.size_y / rx_sub.size_y);
    if (tx_block < 0 || tx_block >= tx_tiles)
        throw std::out_of_range("extract_subarray: tx block " + std::to_string(tx_block) +
                                " out of range [0, " + std::to_string(tx_tiles) + ")");
    if (rx_block < 0 || rx_block >= rx_tiles)
        throw std::out_of_range("extract_subarray: rx block " + std::to_string(rx_block) +
                                " out of range [0, " + std::to_string(rx_tiles) + ")");

    const int tx_x0 = (tx_block % tx_tiles_x) * tx_sub.size_x;
    const int tx_y0 = (tx_block / tx_tiles_x) * tx_sub.size_y;
    const int rx_x0 = (rx_block % rx_tiles_x) * rx_sub.size_x;
    const int rx_y0 = (rx_block / rx_tiles_x) * rx_sub.size_y;

    SiChannel out;
    out.tx_layout = tx_sub;
    out.rx_layout = rx_sub;
    out.freqs_hz = ch.freqs_hz;
    const int n = ch.freq_count();
    out.tensor.resize(static_cast<std::size_t>(rx_sub.element_count()) *
                      static_cast<std::size_t>(tx_sub.element_count()) *
                      static_cast<std::size_t>(n));

    for (int ul = 0; ul < rx_sub.size_y; ++ul)
        for (int uk = 0; uk < rx_sub.size_x; ++uk) {
            const int u_sub = element_index(rx_sub, uk, ul);
            const int u_full = element_index(ch.rx_layout, rx_x0 + uk, rx_y0 + ul);
            for (int dl = 0; dl < tx_sub.size_y; ++dl)
                for (int dk = 0; dk < tx_sub.size_x; ++dk) {
                    const int d_sub = element_index(tx_sub, dk, dl);
                    const int d_full = element_index(ch.tx_layout, tx_x0 + dk, tx_y0 + dl);
                    for (int f = 0; f < n; ++f) out.at(u_sub, d_sub, f) = ch.at(u_full, d_full, f);
                }
        }
    return out;
}

} // namespace sibeam
