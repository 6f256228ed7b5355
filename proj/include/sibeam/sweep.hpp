// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sibeam/channel_io.hpp"
#include "sibeam/schemes.hpp"

namespace sibeam {

/// One sweep axis in degrees: either a single value or an inclusive
/// start:step:stop range.
struct AngleAxis {
    double start_deg = 90.0;
    double step_deg = 0.0;
    double stop_deg = 90.0;

    std::vector<double> values() const {
        if (stop_deg == start_deg) return {start_deg};
        std::vector<double> out;
        for (double v = start_deg; v <= stop_deg + 1e-9; v += step_deg) out.push_back(v);
        return out;
    }

    void validate() const {
        if (start_deg < 0.0 || stop_deg > 360.0 || stop_deg < start_deg)
            throw std::invalid_argument("sweep axis must satisfy 0 <= start <= stop <= 360 degrees");
        if (stop_deg > start_deg && !(step_deg > 0.0))
            throw std::invalid_argument("sweep axis step must be positive");
    }
};

/// Parses "start:step:stop" or a single "value" (degrees).
inline AngleAxis parse_angle_axis(const std::string& text) {
    const auto parse_num = [&](const std::string& s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw std::invalid_argument("bad angle value '" + s + "'");
        return v;
    };
    const std::size_t c1 = text.find(':');
    AngleAxis axis;
    if (c1 == std::string::npos) {
        axis.start_deg = axis.stop_deg = parse_num(text);
        axis.step_deg = 0.0;
    } else {
        const std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("angle range must be start:step:stop, got '" + text + "'");
        axis.start_deg = parse_num(text.substr(0, c1));
        axis.step_deg = parse_num(text.substr(c1 + 1, c2 - c1 - 1));
        axis.stop_deg = parse_num(text.substr(c2 + 1));
    }
    axis.validate();
    return axis;
}

/// Cross product of the four nominal-angle axes. Cells enumerate tx azimuth
/// outermost, then rx azimuth, tx elevation, rx elevation.
struct SweepGrid {
    AngleAxis tx_azimuth;   // psi_d
    AngleAxis rx_azimuth;   // psi_u
    AngleAxis tx_elevation; // theta_d
    AngleAxis rx_elevation; // theta_u

    void validate() const {
        tx_azimuth.validate();
        rx_azimuth.validate();
        tx_elevation.validate();
        rx_elevation.validate();
    }
};

struct CellAngles {
    double psi_d_deg, psi_u_deg, theta_d_deg, theta_u_deg;
};

inline std::vector<CellAngles> grid_cells(const SweepGrid& grid) {
    grid.validate();
    std::vector<CellAngles> cells;
    for (double pd : grid.tx_azimuth.values())
        for (double pu : grid.rx_azimuth.values())
            for (double td : grid.tx_elevation.values())
                for (double tu : grid.rx_elevation.values())
                    cells.push_back({pd, pu, td, tu});
    return cells;
}

struct SweepCell {
    CellAngles angles{};
    std::vector<SchemeResult> results; // parallel to SweepReport::schemes
};

struct SchemeAggregate {
    double best_db = 0.0;  // most negative SI level
    double worst_db = 0.0; // least negative SI level
    double avg_db = 0.0;   // arithmetic mean of the dB levels
};

struct SweepReport {
    std::vector<SchemeKind> schemes;
    std::vector<SweepCell> cells;
    std::vector<SchemeAggregate> aggregates; // parallel to schemes
};

struct SweepContext {
    const SiChannel* channel = nullptr; // full-array channel
    ArrayLayout tx_sub{2, 2, 0.5};
    ArrayLayout rx_sub{2, 2, 0.5};
    int tx_block = 0;
    int rx_block = 0;
    double band_center_hz = 3.5e9;
    double band_width_hz = 20e6;
    ConstraintConfig constraints{0.2, 1e3};
    PsoConfig pso;
    std::uint64_t master_seed = 1;
    int threads = 0; // 0 = hardware concurrency
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-cell seed is master ^ cell index; per-scheme run seeds are mixed from
// it so CM and NCM never share a draw sequence.
inline std::uint64_t scheme_seed(std::uint64_t cell_seed, SchemeKind kind) {
    return splitmix64(cell_seed ^ (static_cast<std::uint64_t>(kind) + 1));
}

} // namespace detail

inline SchemeAggregate aggregate_levels(const std::vector<double>& levels_db) {
    if (levels_db.empty()) throw std::invalid_argument("aggregate: no cells to aggregate");
    SchemeAggregate agg;
    agg.best_db = *std::min_element(levels_db.begin(), levels_db.end());
    agg.worst_db = *std::max_element(levels_db.begin(), levels_db.end());
    double sum = 0.0;
    for (double v : levels_db) sum += v;
    agg.avg_db = sum / static_cast<double>(levels_db.size());
    return agg;
}

inline void compute_aggregates(SweepReport& report) {
    report.aggregates.clear();
    for (std::size_t s = 0; s < report.schemes.size(); ++s) {
        std::vector<double> levels;
        levels.reserve(report.cells.size());
        for (const SweepCell& cell : report.cells)
            levels.push_back(cell.results[s].evaluation.si_level_db());
        report.aggregates.push_back(aggregate_levels(levels));
    }
}

/// Solves every requested scheme for every grid cell. Cells are independent
/// work items run on a bounded pool; per-cell seeds derive from the master
/// seed so results do not depend on scheduling. Within a cell the schemes
/// are solved in MD, CM, NCM order and the swarm of each optimized scheme is
/// seeded with the earlier winners (MD point always, plus the CM solution
/// for NCM), which makes the scheme dominance ordering structural.
inline SweepReport run_sweep(const SweepGrid& grid, const std::vector<SchemeKind>& schemes,
                             const SweepContext& ctx) {
    if (schemes.empty()) throw std::invalid_argument("run_sweep: no schemes requested");
    if (ctx.channel == nullptr) throw std::invalid_argument("run_sweep: no channel");
    ctx.constraints.validate();
    ctx.pso.validate();

    const bool want_md = std::find(schemes.begin(), schemes.end(), SchemeKind::md) != schemes.end();
    const bool want_cm = std::find(schemes.begin(), schemes.end(), SchemeKind::cm) != schemes.end();
    const bool want_ncm = std::find(schemes.begin(), schemes.end(), SchemeKind::ncm) != schemes.end();

    SweepReport report;
    if (want_md) report.schemes.push_back(SchemeKind::md);
    if (want_cm) report.schemes.push_back(SchemeKind::cm);
    if (want_ncm) report.schemes.push_back(SchemeKind::ncm);

    const SiChannel sub =
        extract_subarray(*ctx.channel, ctx.tx_block, ctx.rx_block, ctx.tx_sub, ctx.rx_sub);
    const BandSlice band = slice_band(sub, ctx.band_center_hz, ctx.band_width_hz);

    const std::vector<CellAngles> cells = grid_cells(grid);
    report.cells.resize(cells.size());

    const auto solve_cell = [&](std::size_t index) {
        const CellAngles& a = cells[index];
        SiProblem prob;
        prob.channel = &sub;
        prob.band = band;
        prob.tx_nominal = {deg_to_rad(a.theta_d_deg), deg_to_rad(a.psi_d_deg)};
        prob.rx_nominal = {deg_to_rad(a.theta_u_deg), deg_to_rad(a.psi_u_deg)};
        prob.constraints = ctx.constraints;

        const std::uint64_t cell_seed = ctx.master_seed ^ static_cast<std::uint64_t>(index);

        SweepCell out;
        out.angles = a;
        SchemeResult cm_result;
        bool have_cm = false;
        if (want_md) out.results.push_back(solve_scheme(SchemeKind::md, prob, ctx.pso));
        if (want_cm) {
            PsoConfig cfg = ctx.pso;
            cfg.rng_seed = detail::scheme_seed(cell_seed, SchemeKind::cm);
            cm_result = solve_scheme(SchemeKind::cm, prob, cfg);
            have_cm = true;
            out.results.push_back(cm_result);
        }
        if (want_ncm) {
            PsoConfig cfg = ctx.pso;
            cfg.rng_seed = detail::scheme_seed(cell_seed, SchemeKind::ncm);
            std::vector<DecisionVector> seeds;
            if (have_cm) seeds.push_back(cm_result.decision);
            out.results.push_back(solve_scheme(SchemeKind::ncm, prob, cfg, seeds));
        }
        report.cells[index] = std::move(out);
    };

    int threads = ctx.threads > 0 ? ctx.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, static_cast<int>(cells.size()));

    if (threads == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) solve_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                try {
                    solve_cell(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    compute_aggregates(report);
    return report;
}

/// CSV with one row per (cell, scheme) followed by best/worst/avg aggregate
/// rows per scheme; equal seeds reproduce the output byte for byte.
inline std::string write_sweep_csv(const SweepReport& report) {
    std::string out = "psi_d_deg,psi_u_deg,theta_d_deg,theta_u_deg,scheme,si_level_db,"
                      "tx_degradation,rx_degradation,iterations_used\n";
    const auto append = [&out](double v) { detail::append_number(out, v); };
    for (const SweepCell& cell : report.cells) {
        for (std::size_t s = 0; s < report.schemes.size(); ++s) {
            const SchemeResult& r = cell.results[s];
            append(cell.angles.psi_d_deg);
            out += ',';
            append(cell.angles.psi_u_deg);
            out += ',';
            append(cell.angles.theta_d_deg);
            out += ',';
            append(cell.angles.theta_u_deg);
            out += ',';
            out += scheme_name(report.schemes[s]);
            out += ',';
            append(r.evaluation.si_level_db());
            out += ',';
            append(r.evaluation.tx_degradation);
            out += ',';
            append(r.evaluation.rx_degradation);
            out += ',';
            out += std::to_string(r.iterations_used);
            out += '\n';
        }
    }
    for (std::size_t s = 0; s < report.schemes.size(); ++s) {
        const SchemeAggregate& agg = report.aggregates[s];
        const char* name = scheme_name(report.schemes[s]);
        const auto agg_row = [&](const char* suffix, double value) {
            out += ",,,,";
            out += name;
            out += suffix;
            out += ',';
            append(value);
            out += ",,,\n";
        };
        agg_row(":best", agg.best_db);
        agg_row(":worst", agg.worst_db);
        agg_row(":avg", agg.avg_db);
    }
    return out;
}

} // namespace sibeam
