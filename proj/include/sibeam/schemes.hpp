// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "sibeam/objective.hpp"
#include "sibeam/pso.hpp"

namespace sibeam {

/// The three comparison schemes. MD keeps exact steering with unit gains;
/// CM optimizes the four beam angles with gains pinned to one; NCM optimizes
/// angles and per-antenna gains jointly.
enum class SchemeKind { md, cm, ncm };

inline const char* scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::md: return "MD";
        case SchemeKind::cm: return "CM";
        default: return "NCM";
    }
}

inline SchemeKind parse_scheme(const std::string& name) {
    if (name == "MD" || name == "md") return SchemeKind::md;
    if (name == "CM" || name == "cm") return SchemeKind::cm;
    if (name == "NCM" || name == "ncm") return SchemeKind::ncm;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected MD, CM or NCM)");
}

/// Search-space bounds for a scheme: angles over the full [0, 2*pi] circle,
/// gains free in [0, 1] for NCM and pinned to [1, 1] otherwise.
inline Bounds scheme_bounds(const SiProblem& prob, SchemeKind kind) {
    const int dim = prob.dimension();
    Bounds b;
    b.lower.assign(static_cast<std::size_t>(dim), kind == SchemeKind::ncm ? 0.0 : 1.0);
    b.upper.assign(static_cast<std::size_t>(dim), 1.0);
    for (int i = 0; i < 4; ++i) {
        b.lower[static_cast<std::size_t>(i)] = 0.0;
        b.upper[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi;
    }
    return b;
}

struct SchemeResult {
    SchemeKind scheme = SchemeKind::md;
    DecisionVector decision;
    SiEvaluation evaluation;
    double fitness = 0.0;
    // optimizer trace summary
    double initial_fitness = 0.0;
    long long evaluations = 0;
    int iterations_used = 0;
};

/// Solves one scheme at the nominal angle pair carried by the problem. MD is
/// a single evaluation of the nominal point. CM and NCM run the swarm with
/// the nominal point as particle 0; extra seeds (e.g. the CM winner when
/// solving NCM) occupy the following particles.
inline SchemeResult solve_scheme(SchemeKind kind, const SiProblem& prob, const PsoConfig& cfg,
                                 const std::vector<DecisionVector>& extra_seeds = {}) {
    SchemeResult res;
    res.scheme = kind;

    if (kind == SchemeKind::md) {
        res.decision = prob.nominal_point();
        res.evaluation = prob.evaluate(res.decision);
        res.fitness = prob.fitness_from(res.evaluation);
        res.initial_fitness = res.fitness;
        res.evaluations = 1;
        res.iterations_used = 0;
        return res;
    }

    std::vector<DecisionVector> seeds;
    seeds.push_back(prob.nominal_point());
    for (const DecisionVector& s : extra_seeds) seeds.push_back(s);

    const Bounds bounds = scheme_bounds(prob, kind);
    const PsoResult pso = run_pso(cfg, bounds, [&prob](const DecisionVector& x) {
        return prob.fitness(x);
    }, std::span<const DecisionVector>(seeds));

    res.decision = pso.best;
    res.evaluation = prob.evaluate(pso.best);
    res.fitness = pso.best_fitness;
    res.initial_fitness = pso.fitness_trace.front();
    res.evaluations = pso.evaluations;
    res.iterations_used = cfg.iterations;
    return res;
}

} // namespace sibeam
