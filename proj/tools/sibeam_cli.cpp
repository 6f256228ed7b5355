// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors
//
// Command-line front end: synthesize or inspect coupling channels, solve a
// single angle pair, or sweep angle grids and emit CSV reports.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sibeam/sibeam.hpp"

namespace {

using namespace sibeam;

ArrayLayout parse_layout(const std::string& text, double spacing) {
    const std::size_t x = text.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("array size must look like 8x8 or 1x4, got '" + text + "'");
    try {
        ArrayLayout layout{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1)), spacing};
        layout.validate();
        return layout;
    } catch (const std::exception& e) {
        throw CLI::ValidationError(std::string("bad array size '") + text + "': " + e.what());
    }
}

ChannelFormat format_for_path(const std::string& path, const std::string& format_flag) {
    if (format_flag == "binary") return ChannelFormat::binary;
    if (format_flag == "csv") return ChannelFormat::csv;
    // auto: decide by extension
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return ChannelFormat::csv;
    return ChannelFormat::binary;
}

struct ChannelOptions {
    std::string channel_path;
    std::string format = "auto";
    bool synthetic = false;
    std::string tx_array = "8x8";
    std::string rx_array = "8x8";
    double spacing = 0.5;
    double separation = 10.0;
    double alpha = 0.027;
};

struct BandOptions {
    double center_hz = 3.5e9;
    double width_hz = 20e6;
};

struct SolverOptions {
    std::string subarray = "2x2";
    int tx_block = 0;
    int rx_block = 0;
    double epsilon = -1.0; // <0: use the 5% default
    double penalty = 1e3;
    int particles = 20;
    int iterations = 150;
    std::uint64_t seed = 1;
    double omega1_max = 2.0;
    double omega2_max = 2.0;
    double omega3 = 1.1;
    std::string inertia = "constant";
    std::vector<std::string> schemes = {"MD", "CM", "NCM"};
    int threads = 0;
};

void add_channel_flags(CLI::App* cmd, ChannelOptions& opt) {
    cmd->add_option("--channel", opt.channel_path, "Coupling channel file (SICH binary or CSV)");
    cmd->add_option("--format", opt.format, "Channel file format: auto, binary or csv")
        ->check(CLI::IsMember({"auto", "binary", "csv"}))
        ->capture_default_str();
    cmd->add_flag("--synthetic", opt.synthetic, "Synthesize a line-of-sight channel instead of loading one");
    cmd->add_option("--tx-array", opt.tx_array, "Full Tx array size, e.g. 8x8")->capture_default_str();
    cmd->add_option("--rx-array", opt.rx_array, "Full Rx array size, e.g. 8x8")->capture_default_str();
    cmd->add_option("--spacing", opt.spacing, "Element spacing in wavelengths")->capture_default_str();
    cmd->add_option("--separation", opt.separation,
                    "Tx/Rx array separation in wavelengths (synthetic channel)")
        ->capture_default_str();
    cmd->add_option("--alpha", opt.alpha, "Coupling amplitude of the synthetic channel")
        ->capture_default_str();
}

void add_band_flags(CLI::App* cmd, BandOptions& opt) {
    cmd->add_option("--band-center-hz", opt.center_hz, "Operating band center in Hz")
        ->capture_default_str();
    cmd->add_option("--band-width-hz", opt.width_hz, "Operating bandwidth in Hz")
        ->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverOptions& opt) {
    cmd->add_option("--subarray", opt.subarray, "Sub-array size per RF chain, e.g. 2x2, 4x4, 1x4")
        ->capture_default_str();
    cmd->add_option("--tx-block", opt.tx_block, "Tx sub-array block index")->capture_default_str();
    cmd->add_option("--rx-block", opt.rx_block, "Rx sub-array block index")->capture_default_str();
    cmd->add_option("--epsilon", opt.epsilon,
                    "Directivity degradation slack (default: 5% of the sub-array size)");
    cmd->add_option("--penalty", opt.penalty, "Constraint penalty weight")->capture_default_str();
    cmd->add_option("--particles", opt.particles, "Swarm size")->capture_default_str();
    cmd->add_option("--iterations", opt.iterations, "Swarm movement iterations")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--omega1-max", opt.omega1_max, "Global attraction draw range top")
        ->capture_default_str();
    cmd->add_option("--omega2-max", opt.omega2_max, "Personal attraction draw range top")
        ->capture_default_str();
    cmd->add_option("--omega3", opt.omega3, "Inertia weight (constant mode)")->capture_default_str();
    cmd->add_option("--inertia", opt.inertia, "Inertia mode: constant or schedule ((T-1)/T)")
        ->check(CLI::IsMember({"constant", "schedule"}))
        ->capture_default_str();
    cmd->add_option("--schemes", opt.schemes, "Schemes to solve (MD, CM, NCM)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--threads", opt.threads, "Worker threads for sweep cells (0 = all cores)")
        ->capture_default_str();
}

SiChannel make_channel(const ChannelOptions& chan, const BandOptions& band) {
    if (chan.synthetic) {
        const ArrayLayout tx = parse_layout(chan.tx_array, chan.spacing);
        const ArrayLayout rx = parse_layout(chan.rx_array, chan.spacing);
        return generate_los_channel(tx, rx, chan.separation,
                                    band_frequency_grid(band.center_hz, band.width_hz), chan.alpha);
    }
    if (chan.channel_path.empty())
        throw CLI::ValidationError("either --channel <file> or --synthetic is required");
    const ArrayLayout tx = parse_layout(chan.tx_array, chan.spacing);
    const ArrayLayout rx = parse_layout(chan.rx_array, chan.spacing);
    return load_channel(chan.channel_path, format_for_path(chan.channel_path, chan.format), tx, rx);
}

SweepContext make_context(const SiChannel& channel, const ChannelOptions&, const BandOptions& band,
                          const SolverOptions& solver) {
    SweepContext ctx;
    ctx.channel = &channel;
    ctx.tx_sub = parse_layout(solver.subarray, channel.tx_layout.spacing);
    ctx.rx_sub = parse_layout(solver.subarray, channel.rx_layout.spacing);
    ctx.tx_block = solver.tx_block;
    ctx.rx_block = solver.rx_block;
    ctx.band_center_hz = band.center_hz;
    ctx.band_width_hz = band.width_hz;
    ctx.constraints.epsilon = solver.epsilon >= 0.0 ? solver.epsilon
                                                    : default_epsilon(ctx.tx_sub, ctx.rx_sub);
    ctx.constraints.penalty_weight = solver.penalty;
    ctx.pso.particles = solver.particles;
    ctx.pso.iterations = solver.iterations;
    ctx.pso.omega1_max = solver.omega1_max;
    ctx.pso.omega2_max = solver.omega2_max;
    ctx.pso.omega3 = solver.omega3;
    ctx.pso.inertia = solver.inertia == "schedule" ? InertiaMode::iteration_ratio
                                                   : InertiaMode::constant;
    ctx.master_seed = solver.seed;
    ctx.threads = solver.threads;
    return ctx;
}

std::vector<SchemeKind> parse_schemes(const std::vector<std::string>& names) {
    std::vector<SchemeKind> out;
    for (const std::string& n : names) out.push_back(parse_scheme(n));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

int run_gen_channel(const ChannelOptions& chan, const BandOptions& band, const std::string& out,
                    const std::string& format, double freq_start, double freq_stop,
                    int freq_points) {
    const ArrayLayout tx = parse_layout(chan.tx_array, chan.spacing);
    const ArrayLayout rx = parse_layout(chan.rx_array, chan.spacing);
    std::vector<double> grid;
    if (freq_points > 0)
        grid = linear_frequency_grid(freq_start, freq_stop, freq_points);
    else
        grid = band_frequency_grid(band.center_hz, band.width_hz);
    const SiChannel ch = generate_los_channel(tx, rx, chan.separation, std::move(grid), chan.alpha);
    save_channel(ch, out, format_for_path(out, format));
    std::cout << "wrote " << ch.rx_count() << "x" << ch.tx_count() << "x" << ch.freq_count()
              << " channel to " << out << "\n";
    return 0;
}

int run_inspect(const ChannelOptions& chan) {
    if (chan.channel_path.empty()) throw CLI::ValidationError("inspect-channel needs --channel");
    const SiChannel ch = load_channel(chan.channel_path,
                                      format_for_path(chan.channel_path, chan.format));
    double max_mag = 0.0, sum_power = 0.0;
    for (const Complex& v : ch.tensor) {
        max_mag = std::max(max_mag, std::abs(v));
        sum_power += std::norm(v);
    }
    const double mean_power = sum_power / static_cast<double>(ch.tensor.size());
    std::cout << "file:           " << chan.channel_path << "\n"
              << "dimensions:     " << ch.rx_count() << " rx x " << ch.tx_count() << " tx x "
              << ch.freq_count() << " frequencies\n"
              << "rx layout:      " << ch.rx_layout.size_x << "x" << ch.rx_layout.size_y
              << " (spacing " << ch.rx_layout.spacing << " wavelengths)\n"
              << "tx layout:      " << ch.tx_layout.size_x << "x" << ch.tx_layout.size_y
              << " (spacing " << ch.tx_layout.spacing << " wavelengths)\n"
              << "frequency span: " << ch.freqs_hz.front() / 1e9 << " - "
              << ch.freqs_hz.back() / 1e9 << " GHz\n"
              << "max |h|:        " << max_mag << "\n"
              << "mean coupling:  " << 10.0 * std::log10(mean_power) << " dB\n";
    return 0;
}

int run_solve(const ChannelOptions& chan, const BandOptions& band, const SolverOptions& solver,
              double psi_d, double psi_u, double theta_d, double theta_u,
              const std::string& out_path) {
    const SiChannel channel = make_channel(chan, band);
    const SweepContext ctx = make_context(channel, chan, band, solver);

    SweepGrid grid;
    grid.tx_azimuth = {psi_d, 0.0, psi_d};
    grid.rx_azimuth = {psi_u, 0.0, psi_u};
    grid.tx_elevation = {theta_d, 0.0, theta_d};
    grid.rx_elevation = {theta_u, 0.0, theta_u};

    const SweepReport report = run_sweep(grid, parse_schemes(solver.schemes), ctx);
    const SweepCell& cell = report.cells.front();
    std::cout << "angles: psi_d=" << psi_d << " psi_u=" << psi_u << " theta_d=" << theta_d
              << " theta_u=" << theta_u << " deg, epsilon=" << ctx.constraints.epsilon << "\n";
    for (std::size_t s = 0; s < report.schemes.size(); ++s) {
        const SchemeResult& r = cell.results[s];
        std::cout << scheme_name(report.schemes[s]) << ": si_level_db=" << r.evaluation.si_level_db()
                  << " tx_degradation=" << r.evaluation.tx_degradation
                  << " rx_degradation=" << r.evaluation.rx_degradation
                  << " iterations=" << r.iterations_used << "\n";
    }
    if (!out_path.empty()) write_text(out_path, write_sweep_csv(report));
    return 0;
}

int run_sweep_cmd(const ChannelOptions& chan, const BandOptions& band, const SolverOptions& solver,
                  const std::string& psi_d, const std::string& psi_u, const std::string& theta_d,
                  const std::string& theta_u, const std::string& out_path) {
    const SiChannel channel = make_channel(chan, band);
    const SweepContext ctx = make_context(channel, chan, band, solver);

    SweepGrid grid;
    grid.tx_azimuth = parse_angle_axis(psi_d);
    grid.rx_azimuth = parse_angle_axis(psi_u);
    grid.tx_elevation = parse_angle_axis(theta_d);
    grid.rx_elevation = parse_angle_axis(theta_u);

    const SweepReport report = run_sweep(grid, parse_schemes(solver.schemes), ctx);
    const std::string csv = write_sweep_csv(report);
    if (out_path.empty())
        std::cout << csv;
    else {
        write_text(out_path, csv);
        std::cerr << "wrote " << report.cells.size() << " cells x " << report.schemes.size()
                  << " schemes to " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RF beamforming self-interference suppression: gain-controlled sub-array "
                 "beamformers, wideband SI evaluation and swarm-optimized beam perturbation"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key = value config file");

    ChannelOptions chan;
    BandOptions band;
    SolverOptions solver;

    // unmatched subcommand options (e.g. --config) fall through to the app
    app.fallthrough();

    // gen-channel
    auto* gen = app.add_subcommand("gen-channel", "Synthesize a line-of-sight coupling channel file");
    std::string gen_out, gen_format = "auto";
    double freq_start = 3e9, freq_stop = 4e9;
    int freq_points = 0;
    add_channel_flags(gen, chan);
    add_band_flags(gen, band);
    gen->add_option("--out", gen_out, "Output file path")->required();
    gen->add_option("--out-format", gen_format, "Output format: auto, binary or csv")
        ->check(CLI::IsMember({"auto", "binary", "csv"}));
    gen->add_option("--freq-start-hz", freq_start, "Full-grid start frequency")->capture_default_str();
    gen->add_option("--freq-stop-hz", freq_stop, "Full-grid stop frequency")->capture_default_str();
    gen->add_option("--freq-points", freq_points,
                    "Full-grid point count (default: cover just the band at 625 kHz)");

    // inspect-channel
    auto* inspect = app.add_subcommand("inspect-channel", "Print a channel file summary");
    add_channel_flags(inspect, chan);

    // solve
    auto* solve = app.add_subcommand("solve", "Solve one nominal angle pair");
    double psi_d = 90.0, psi_u = 90.0, theta_d = 90.0, theta_u = 90.0;
    std::string solve_out;
    add_channel_flags(solve, chan);
    add_band_flags(solve, band);
    add_solver_flags(solve, solver);
    solve->add_option("--psi-d", psi_d, "Downlink azimuth, degrees")->capture_default_str();
    solve->add_option("--psi-u", psi_u, "Uplink azimuth, degrees")->capture_default_str();
    solve->add_option("--theta-d", theta_d, "Downlink elevation, degrees")->capture_default_str();
    solve->add_option("--theta-u", theta_u, "Uplink elevation, degrees")->capture_default_str();
    solve->add_option("--out", solve_out, "Also write the result as CSV");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Sweep angle grids and report per-cell SI levels");
    std::string s_psi_d = "0:30:180", s_psi_u = "0:30:180", s_theta_d = "90", s_theta_u = "90";
    std::string sweep_out;
    add_channel_flags(sweep, chan);
    add_band_flags(sweep, band);
    add_solver_flags(sweep, solver);
    sweep->add_option("--psi-d", s_psi_d, "Downlink azimuth value or start:step:stop, degrees")
        ->capture_default_str();
    sweep->add_option("--psi-u", s_psi_u, "Uplink azimuth value or start:step:stop, degrees")
        ->capture_default_str();
    sweep->add_option("--theta-d", s_theta_d, "Downlink elevation value or start:step:stop, degrees")
        ->capture_default_str();
    sweep->add_option("--theta-u", s_theta_u, "Uplink elevation value or start:step:stop, degrees")
        ->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_gen_channel(chan, band, gen_out, gen_format, freq_start, freq_stop,
                                   freq_points);
        if (inspect->parsed()) return run_inspect(chan);
        if (solve->parsed())
            return run_solve(chan, band, solver, psi_d, psi_u, theta_d, theta_u, solve_out);
        if (sweep->parsed())
            return run_sweep_cmd(chan, band, solver, s_psi_d, s_psi_u, s_theta_d, s_theta_u,
                                 sweep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
