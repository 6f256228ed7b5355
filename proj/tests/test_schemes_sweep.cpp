// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sibeam/sibeam.hpp"

using namespace sibeam;

namespace {

SiChannel default_synthetic_channel() {
    return generate_los_channel({8, 8, 0.5}, {8, 8, 0.5}, 10.0, band_frequency_grid(3.5e9, 20e6),
                                0.027);
}

SweepContext make_context(const SiChannel& ch, int iterations, std::uint64_t seed) {
    SweepContext ctx;
    ctx.channel = &ch;
    ctx.tx_sub = ctx.rx_sub = {2, 2, 0.5};
    ctx.constraints.epsilon = default_epsilon(ctx.tx_sub, ctx.rx_sub);
    ctx.pso.iterations = iterations;
    ctx.master_seed = seed;
    return ctx;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    // a trailing comma means a final empty field
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace

TEST_CASE("angle axis parsing") {
    const AngleAxis single = parse_angle_axis("90");
    CHECK(single.values() == std::vector<double>{90.0});

    const AngleAxis range = parse_angle_axis("0:30:180");
    CHECK(range.values() == std::vector<double>{0.0, 30.0, 60.0, 90.0, 120.0, 150.0, 180.0});

    CHECK_THROWS_AS(parse_angle_axis("0:30"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_axis("banana"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_axis("0:0:180"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_axis("-10:30:180"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_axis("0:30:400"), std::invalid_argument);
}

TEST_CASE("grid cell counts match the reference sweeps") {
    SweepGrid fig2a;
    fig2a.tx_azimuth = parse_angle_axis("0:30:180");
    fig2a.rx_azimuth = parse_angle_axis("0:30:180");
    fig2a.tx_elevation = parse_angle_axis("90");
    fig2a.rx_elevation = parse_angle_axis("90");
    CHECK(grid_cells(fig2a).size() == 49);

    SweepGrid fig2b;
    fig2b.tx_azimuth = parse_angle_axis("90");
    fig2b.rx_azimuth = parse_angle_axis("90");
    fig2b.tx_elevation = parse_angle_axis("0:30:90");
    fig2b.rx_elevation = parse_angle_axis("0:30:90");
    CHECK(grid_cells(fig2b).size() == 16);
}

TEST_CASE("maximum-directivity scheme returns the nominal point") {
    const SiChannel ch = default_synthetic_channel();
    const SiChannel sub = extract_subarray(ch, 0, 0, {2, 2, 0.5}, {2, 2, 0.5});
    SiProblem prob;
    prob.channel = &sub;
    prob.band = slice_band(sub, 3.5e9, 20e6);
    prob.tx_nominal = {deg_to_rad(60.0), deg_to_rad(30.0)};
    prob.rx_nominal = {deg_to_rad(90.0), deg_to_rad(120.0)};
    prob.constraints.epsilon = 0.2;

    const SchemeResult r = solve_scheme(SchemeKind::md, prob, PsoConfig{});
    CHECK(r.decision == prob.nominal_point());
    CHECK(r.iterations_used == 0);
    CHECK(r.evaluation.tx_degradation <= 1e-9);
    CHECK(r.evaluation.rx_degradation <= 1e-9);
    CHECK(r.fitness == r.evaluation.mean_si_power);
}

TEST_CASE("scheme dominance holds cell by cell") {
    const SiChannel ch = default_synthetic_channel();
    const SweepContext ctx = make_context(ch, 25, 7);

    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:90:180");
    grid.rx_azimuth = parse_angle_axis("45:90:135");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");

    const SweepReport report =
        run_sweep(grid, {SchemeKind::md, SchemeKind::cm, SchemeKind::ncm}, ctx);
    REQUIRE(report.cells.size() == 6);
    for (const SweepCell& cell : report.cells) {
        const double md = cell.results[0].evaluation.si_level_db();
        const double cm = cell.results[1].evaluation.si_level_db();
        const double ncm = cell.results[2].evaluation.si_level_db();
        CHECK(ncm <= cm);
        CHECK(cm <= md);
        CHECK(cell.results[2].fitness <= cell.results[1].fitness);
        CHECK(cell.results[1].fitness <= cell.results[0].fitness);
    }
}

TEST_CASE("single-cell sweep reduces to solve_scheme") {
    const SiChannel ch = default_synthetic_channel();
    const SweepContext ctx = make_context(ch, 20, 11);

    SweepGrid grid;
    grid.tx_azimuth = grid.rx_azimuth = parse_angle_axis("90");
    grid.tx_elevation = grid.rx_elevation = parse_angle_axis("90");
    const SweepReport report = run_sweep(grid, {SchemeKind::cm}, ctx);
    REQUIRE(report.cells.size() == 1);

    const SiChannel sub = extract_subarray(ch, 0, 0, ctx.tx_sub, ctx.rx_sub);
    SiProblem prob;
    prob.channel = &sub;
    prob.band = slice_band(sub, ctx.band_center_hz, ctx.band_width_hz);
    prob.tx_nominal = prob.rx_nominal = {deg_to_rad(90.0), deg_to_rad(90.0)};
    prob.constraints = ctx.constraints;

    PsoConfig cfg = ctx.pso;
    cfg.rng_seed = detail::scheme_seed(ctx.master_seed ^ 0u, SchemeKind::cm);
    const SchemeResult direct = solve_scheme(SchemeKind::cm, prob, cfg);
    CHECK(report.cells[0].results[0].fitness == direct.fitness);
    CHECK(report.cells[0].results[0].decision == direct.decision);
}

TEST_CASE("aggregates") {
    const SchemeAggregate single = aggregate_levels({-55.0});
    CHECK(single.best_db == -55.0);
    CHECK(single.worst_db == -55.0);
    CHECK(single.avg_db == -55.0);

    const SchemeAggregate pair = aggregate_levels({-80.0, -40.0});
    CHECK(pair.best_db == -80.0);
    CHECK(pair.worst_db == -40.0);
    CHECK(pair.avg_db == -60.0);

    CHECK_THROWS_AS(aggregate_levels({}), std::invalid_argument);
}

TEST_CASE("aggregate ordering holds on a real sweep") {
    const SiChannel ch = default_synthetic_channel();
    const SweepContext ctx = make_context(ch, 15, 3);
    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:60:180");
    grid.rx_azimuth = parse_angle_axis("90");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");
    const SweepReport report = run_sweep(grid, {SchemeKind::md, SchemeKind::ncm}, ctx);
    for (const SchemeAggregate& agg : report.aggregates) {
        CHECK(agg.best_db <= agg.avg_db);
        CHECK(agg.avg_db <= agg.worst_db);
    }
}

TEST_CASE("equal master seeds reproduce the csv byte for byte") {
    const SiChannel ch = default_synthetic_channel();
    const SweepContext ctx = make_context(ch, 20, 99);
    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:90:180");
    grid.rx_azimuth = parse_angle_axis("90");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");
    const std::vector<SchemeKind> schemes{SchemeKind::md, SchemeKind::cm, SchemeKind::ncm};

    SweepContext ctx_serial = ctx;
    ctx_serial.threads = 1;
    const std::string csv1 = write_sweep_csv(run_sweep(grid, schemes, ctx));
    const std::string csv2 = write_sweep_csv(run_sweep(grid, schemes, ctx_serial));
    CHECK(csv1 == csv2);
}

TEST_CASE("csv report layout") {
    const SiChannel ch = default_synthetic_channel();
    const SweepContext ctx = make_context(ch, 5, 1);
    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:180:360");
    grid.rx_azimuth = parse_angle_axis("90");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");
    const SweepReport report = run_sweep(grid, {SchemeKind::md, SchemeKind::ncm}, ctx);
    const std::vector<std::string> lines = split_lines(write_sweep_csv(report));

    REQUIRE(lines.size() == 1 + 3 * 2 + 2 * 3);
    CHECK(lines[0] ==
          "psi_d_deg,psi_u_deg,theta_d_deg,theta_u_deg,scheme,si_level_db,tx_degradation,"
          "rx_degradation,iterations_used");

    const std::vector<std::string> first = split_fields(lines[1]);
    REQUIRE(first.size() == 9);
    CHECK(first[0] == "0");
    CHECK(first[4] == "MD");
    CHECK(first[8] == "0");

    const std::vector<std::string> agg = split_fields(lines[7]);
    REQUIRE(agg.size() == 9);
    CHECK(agg[0].empty());
    CHECK(agg[4] == "MD:best");
    CHECK(agg[8].empty());
}

TEST_CASE("linear and rectangular sub-arrays sweep cleanly") {
    const SiChannel ch = default_synthetic_channel();
    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:90:180");
    grid.rx_azimuth = parse_angle_axis("0:90:180");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");

    for (const ArrayLayout sub : {ArrayLayout{2, 2, 0.5}, ArrayLayout{1, 4, 0.5}}) {
        SweepContext ctx = make_context(ch, 10, 5);
        ctx.tx_sub = ctx.rx_sub = sub;
        ctx.constraints.epsilon = default_epsilon(sub, sub);
        const SweepReport report = run_sweep(grid, {SchemeKind::ncm}, ctx);
        REQUIRE(report.cells.size() == 9);
        REQUIRE(report.aggregates.size() == 1);
        CHECK(std::isfinite(report.aggregates[0].avg_db));
        for (const SweepCell& cell : report.cells)
            CHECK(cell.results[0].evaluation.rx_degradation <= ctx.constraints.epsilon + 1e-9);
    }
}

TEST_CASE("sweep report matches the shipped reference csv") {
    // data/reference_sweep.csv: default synthetic channel, 2x2 sub-array,
    // psi grids 0:90:180, elevations 90, P=20, T=40, master seed 1
    const SiChannel ch = default_synthetic_channel();
    SweepContext ctx = make_context(ch, 40, 1);
    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis("0:90:180");
    grid.rx_azimuth = parse_angle_axis("0:90:180");
    grid.tx_elevation = parse_angle_axis("90");
    grid.rx_elevation = parse_angle_axis("90");
    const SweepReport report =
        run_sweep(grid, {SchemeKind::md, SchemeKind::cm, SchemeKind::ncm}, ctx);
    const std::vector<std::string> got = split_lines(write_sweep_csv(report));

    std::ifstream ref(std::string(SIBEAM_DATA_DIR) + "/reference_sweep.csv");
    REQUIRE(ref.good());
    std::vector<std::string> want;
    std::string line;
    while (std::getline(ref, line)) want.push_back(line);

    REQUIRE(got.size() == want.size());
    CHECK(got[0] == want[0]);
    for (std::size_t i = 1; i < got.size(); ++i) {
        const std::vector<std::string> g = split_fields(got[i]);
        const std::vector<std::string> w = split_fields(want[i]);
        REQUIRE(g.size() == w.size());
        for (std::size_t f = 0; f < g.size(); ++f) {
            if (g[f] == w[f]) continue;
            // numeric fields may drift across libm builds; compare loosely
            const double gv = std::stod(g[f]), wv = std::stod(w[f]);
            CHECK(gv == Catch::Approx(wv).margin(1e-9));
        }
    }
}
