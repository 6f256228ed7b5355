// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sibeam {

/// Particle position: four perturbed beam angles followed by the transmit
/// and receive gain coefficients, [tx_elev, rx_elev, tx_azim, rx_azim,
/// tx gains..., rx gains...].
using DecisionVector = std::vector<double>;

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    int dimension() const { return static_cast<int>(lower.size()); }

    void validate() const {
        if (lower.size() != upper.size())
            throw std::invalid_argument("Bounds: lower/upper dimension mismatch");
        if (lower.empty()) throw std::invalid_argument("Bounds: empty");
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (!(lower[i] <= upper[i]))
                throw std::invalid_argument("Bounds: lower > upper at coordinate " +
                                            std::to_string(i));
    }

    bool contains(const DecisionVector& x) const {
        if (x.size() != lower.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] < lower[i] || x[i] > upper[i]) return false;
        return true;
    }
};

struct Particle {
    DecisionVector position;
    std::vector<double> velocity;
    DecisionVector personal_best;
    double personal_best_fitness = 0.0;
};

enum class InertiaMode {
    constant,       // omega3 as given
    iteration_ratio // omega3 = (T - 1) / T for a T-iteration run
};

struct PsoConfig {
    int particles = 20;
    int iterations = 150; // movement rounds after the initial sampling pass
    double omega1_max = 2.0;
    double omega2_max = 2.0;
    double omega3 = 1.1;
    InertiaMode inertia = InertiaMode::constant;
    std::uint64_t rng_seed = 1;
    bool seed_with_baseline = true;

    void validate() const {
        if (particles < 1) throw std::invalid_argument("PsoConfig: particles must be >= 1");
        if (iterations < 0) throw std::invalid_argument("PsoConfig: iterations must be >= 0");
        if (omega1_max < 0.0 || omega2_max < 0.0 || omega3 < 0.0)
            throw std::invalid_argument("PsoConfig: omega ranges must be >= 0");
    }

    double inertia_weight() const {
        if (inertia == InertiaMode::iteration_ratio)
            return iterations > 0 ? static_cast<double>(iterations - 1) / iterations : 0.0;
        return omega3;
    }
};

struct PsoResult {
    DecisionVector best;
    double best_fitness = 0.0;
    std::vector<double> fitness_trace; // global best after each round, length iterations + 1
    long long evaluations = 0;
};

/// Seedable generator with a platform-independent uniform mapping, so equal
/// seeds give bit-identical runs on any libstdc++/libc++.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  private:
    std::mt19937_64 gen_;
};

/// Deterministic position sampling: all P*D coordinates are drawn uniformly
/// within bounds (particles in index order, coordinates in order), then any
/// baselines overwrite the sampled positions of the leading particles. All
/// velocities start at zero.
inline std::vector<Particle> initialize_swarm(const PsoConfig& cfg, const Bounds& bounds, Rng& rng,
                                              std::span<const DecisionVector> baselines = {}) {
    cfg.validate();
    bounds.validate();
    const int dim = bounds.dimension();

    std::vector<Particle> swarm(static_cast<std::size_t>(cfg.particles));
    for (Particle& p : swarm) {
        p.position.resize(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i)
            p.position[static_cast<std::size_t>(i)] =
                rng.uniform(bounds.lower[static_cast<std::size_t>(i)],
                            bounds.upper[static_cast<std::size_t>(i)]);
        p.velocity.assign(static_cast<std::size_t>(dim), 0.0);
    }

    if (cfg.seed_with_baseline) {
        const std::size_t n = std::min(baselines.size(), swarm.size());
        for (std::size_t b = 0; b < n; ++b) {
            if (static_cast<int>(baselines[b].size()) != dim)
                throw std::invalid_argument("initialize_swarm: baseline dimension mismatch");
            if (!bounds.contains(baselines[b]))
                throw std::invalid_argument("initialize_swarm: baseline outside bounds");
            swarm[b].position = baselines[b];
        }
    }

    for (Particle& p : swarm) p.personal_best = p.position;
    return swarm;
}

/// Deterministic velocity kernel: global attraction, personal attraction and
/// inertia, with the two attraction gains supplied as per-coordinate
/// diagonals.
inline void velocity_step(std::vector<double>& velocity, const DecisionVector& position,
                          const DecisionVector& personal_best, const DecisionVector& global_best,
                          std::span<const double> omega1_diag, std::span<const double> omega2_diag,
                          double inertia_weight) {
    for (std::size_t i = 0; i < velocity.size(); ++i)
        velocity[i] = omega1_diag[i] * (global_best[i] - position[i]) +
                      omega2_diag[i] * (personal_best[i] - position[i]) +
                      inertia_weight * velocity[i];
}

/// Draws the two attraction diagonals (omega1 first, then omega2, entries
/// uniform on [0, omega_max]) and applies the velocity kernel.
inline void velocity_update(Particle& p, const DecisionVector& global_best, const PsoConfig& cfg,
                            Rng& rng) {
    const std::size_t dim = p.position.size();
    std::vector<double> omega1(dim), omega2(dim);
    for (std::size_t i = 0; i < dim; ++i) omega1[i] = rng.uniform(0.0, cfg.omega1_max);
    for (std::size_t i = 0; i < dim; ++i) omega2[i] = rng.uniform(0.0, cfg.omega2_max);
    velocity_step(p.velocity, p.position, p.personal_best, global_best, omega1, omega2,
                  cfg.inertia_weight());
}

inline double clip(double y, double lo, double hi) { return std::min(std::max(y, lo), hi); }

/// Coordinatewise clipped position update.
inline void position_update(Particle& p, const Bounds& bounds) {
    for (std::size_t i = 0; i < p.position.size(); ++i)
        p.position[i] = clip(p.position[i] + p.velocity[i], bounds.lower[i], bounds.upper[i]);
}

/// Runs the swarm: an initial sampling round followed by cfg.iterations
/// movement rounds. Personal bests are running minima over each particle's
/// history; the global best is a fold over personal bests in particle-index
/// order (ties keep the lower index). Fully deterministic for a fixed seed.
template <class FitnessFn>
PsoResult run_pso(const PsoConfig& cfg, const Bounds& bounds, FitnessFn&& fitness,
                  std::span<const DecisionVector> baselines = {}) {
    cfg.validate();
    bounds.validate();

    Rng rng(cfg.rng_seed);
    std::vector<Particle> swarm = initialize_swarm(cfg, bounds, rng, baselines);

    PsoResult result;
    std::size_t best_index = 0;

    const auto fold_global_best = [&] {
        best_index = 0;
        for (std::size_t p = 1; p < swarm.size(); ++p)
            if (swarm[p].personal_best_fitness < swarm[best_index].personal_best_fitness)
                best_index = p;
        result.fitness_trace.push_back(swarm[best_index].personal_best_fitness);
    };

    for (Particle& p : swarm) {
        p.personal_best_fitness = fitness(p.position);
        ++result.evaluations;
    }
    fold_global_best();

    for (int t = 1; t <= cfg.iterations; ++t) {
        // Draws happen serially, in particle order, before any evaluation.
        const DecisionVector global_best = swarm[best_index].personal_best;
        for (Particle& p : swarm) {
            velocity_update(p, global_best, cfg, rng);
            position_update(p, bounds);
        }
        for (Particle& p : swarm) {
            const double f = fitness(p.position);
            ++result.evaluations;
            if (f < p.personal_best_fitness) {
                p.personal_best_fitness = f;
                p.personal_best = p.position;
            }
        }
        fold_global_best();
    }

    result.best = swarm[best_index].personal_best;
    result.best_fitness = swarm[best_index].personal_best_fitness;
    return result;
}

} // namespace sibeam
