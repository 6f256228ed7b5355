// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sibeam/beamformer.hpp"
#include "sibeam/pso.hpp"
#include "sibeam/si_channel.hpp"

namespace sibeam {

/// Substituted when the residual power underflows to zero (suppression is
/// then reported as +300 dB, i.e. an SI level of -300 dB).
inline constexpr double kSuppressionFloorDb = 300.0;

/// Suppression in dB, -10*log10(power). Non-positive power has no finite
/// representation and throws; use to_db_or_floor when a sentinel is wanted.
inline double to_db(double power) {
    if (!(power > 0.0))
        throw std::domain_error("to_db: power " + std::to_string(power) +
                                " is below the numeric floor");
    return -10.0 * std::log10(power);
}

inline double to_db_or_floor(double power, double floor_db = kSuppressionFloorDb) {
    return power > 0.0 ? -10.0 * std::log10(power) : floor_db;
}

/// Result of pushing one beam pair through the coupling channel.
struct SiEvaluation {
    double mean_si_power = 0.0; // band-averaged |f_u^T H f_d|^2, linear
    double suppression_db = 0.0;
    double tx_degradation = 0.0;
    double rx_degradation = 0.0;

    /// Residual SI level in dB (negative numbers; sign-flipped suppression).
    double si_level_db() const { return -suppression_db; }
};

struct ConstraintConfig {
    double epsilon = 0.0;         // directivity degradation slack, absolute
    double penalty_weight = 1e3;

    void validate() const {
        if (!(epsilon >= 0.0)) throw std::invalid_argument("ConstraintConfig: epsilon must be >= 0");
        if (!(penalty_weight > 0.0))
            throw std::invalid_argument("ConstraintConfig: penalty weight must be > 0");
    }
};

/// Default slack: 5% of the smaller sub-array's maximum directivity.
inline double default_epsilon(const ArrayLayout& tx, const ArrayLayout& rx) {
    return 0.05 * std::min(tx.element_count(), rx.element_count());
}

/// Band-averaged residual SI power through the channel, the linear-scale
/// argument of the suppression logarithm: (1/N) * sum_n |f_u^T H(n) f_d|^2.
/// The receive weights already carry conjugated phases, so this is a plain
/// bilinear form with no further conjugation.
inline double si_power(const BeamWeights& rx_beam, const BeamWeights& tx_beam, const SiChannel& ch,
                       const BandSlice& band) {
    const int mu = ch.rx_count(), md = ch.tx_count();
    if (static_cast<int>(rx_beam.weights.size()) != mu)
        throw std::invalid_argument("si_power: rx beam has " +
                                    std::to_string(rx_beam.weights.size()) + " weights, channel has " +
                                    std::to_string(mu) + " rx elements");
    if (static_cast<int>(tx_beam.weights.size()) != md)
        throw std::invalid_argument("si_power: tx beam has " +
                                    std::to_string(tx_beam.weights.size()) + " weights, channel has " +
                                    std::to_string(md) + " tx elements");
    if (band.count < 1 || band.first < 0 || band.first + band.count > ch.freq_count())
        throw std::invalid_argument("si_power: band slice outside the channel grid");

    std::vector<Complex> acc(static_cast<std::size_t>(band.count), Complex{0.0, 0.0});
    const std::size_t n_total = ch.freqs_hz.size();
    for (int u = 0; u < mu; ++u) {
        for (int d = 0; d < md; ++d) {
            const Complex w = rx_beam.weights[static_cast<std::size_t>(u)] *
                              tx_beam.weights[static_cast<std::size_t>(d)];
            const Complex* column = ch.tensor.data() +
                                    (static_cast<std::size_t>(u) * static_cast<std::size_t>(md) +
                                     static_cast<std::size_t>(d)) *
                                        n_total +
                                    static_cast<std::size_t>(band.first);
            for (int k = 0; k < band.count; ++k) acc[static_cast<std::size_t>(k)] += w * column[k];
        }
    }
    double mean = 0.0;
    for (const Complex& a : acc) mean += std::norm(a);
    return mean / static_cast<double>(band.count);
}

/// Everything a fitness evaluation needs: the (sub-array) coupling channel,
/// the operating band, the nominal user directions and the constraint
/// configuration. Holds a non-owning pointer; the channel must outlive the
/// problem.
struct SiProblem {
    const SiChannel* channel = nullptr;
    BandSlice band;
    SteeringAngles tx_nominal;
    SteeringAngles rx_nominal;
    ConstraintConfig constraints;

    int tx_gain_count() const { return channel->tx_count(); }
    int rx_gain_count() const { return channel->rx_count(); }
    int dimension() const { return 4 + tx_gain_count() + rx_gain_count(); }

    // Decision vector layout: [tx_elev, rx_elev, tx_azim, rx_azim,
    //                          tx gains (M_ds), rx gains (M_us)]
    SteeringAngles tx_angles(const DecisionVector& x) const { return {x[0], x[2]}; }
    SteeringAngles rx_angles(const DecisionVector& x) const { return {x[1], x[3]}; }

    GainVector tx_gains(const DecisionVector& x) const {
        return GainVector(x.begin() + 4, x.begin() + 4 + tx_gain_count());
    }
    GainVector rx_gains(const DecisionVector& x) const {
        return GainVector(x.begin() + 4 + tx_gain_count(), x.end());
    }

    BeamWeights tx_beam(const DecisionVector& x) const {
        return build_tx_beam(channel->tx_layout, tx_angles(x), tx_gains(x));
    }
    BeamWeights rx_beam(const DecisionVector& x) const {
        return build_rx_beam(channel->rx_layout, rx_angles(x), rx_gains(x));
    }

    /// Exact steering with unit gains (the maximum-directivity point).
    DecisionVector nominal_point() const {
        DecisionVector x(static_cast<std::size_t>(dimension()), 1.0);
        x[0] = tx_nominal.elevation_rad;
        x[1] = rx_nominal.elevation_rad;
        x[2] = tx_nominal.azimuth_rad;
        x[3] = rx_nominal.azimuth_rad;
        return x;
    }

    void validate(const DecisionVector& x) const {
        if (static_cast<int>(x.size()) != dimension())
            throw std::invalid_argument("SiProblem: decision vector has " +
                                        std::to_string(x.size()) + " coordinates, expected " +
                                        std::to_string(dimension()));
    }

    SiEvaluation evaluate(const DecisionVector& x) const {
        validate(x);
        const BeamWeights ftx = tx_beam(x);
        const BeamWeights frx = rx_beam(x);
        SiEvaluation ev;
        ev.mean_si_power = si_power(frx, ftx, *channel, band);
        ev.suppression_db = to_db_or_floor(ev.mean_si_power);
        ev.tx_degradation = directivity_degradation(ftx, tx_nominal);
        ev.rx_degradation = directivity_degradation(frx, rx_nominal);
        return ev;
    }

    /// Penalized objective: residual power plus hinge penalties on the two
    /// directivity degradation constraints. Equals the raw power exactly
    /// whenever both degradations stay within epsilon. Lower is better.
    double fitness(const DecisionVector& x) const {
        const SiEvaluation ev = evaluate(x);
        return fitness_from(ev);
    }

    double fitness_from(const SiEvaluation& ev) const {
        const double tx_violation = std::max(0.0, ev.tx_degradation - constraints.epsilon);
        const double rx_violation = std::max(0.0, ev.rx_degradation - constraints.epsilon);
        return ev.mean_si_power + constraints.penalty_weight * (tx_violation + rx_violation);
    }
};

} // namespace sibeam
