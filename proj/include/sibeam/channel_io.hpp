// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "sibeam/si_channel.hpp"

namespace sibeam {

// Binary container layout (little-endian):
//   magic "SICH" | version u16 | M_u u32 | M_d u32 | N u32
//   N float64 frequencies (Hz, ascending)
//   M_u * M_d * N interleaved float64 (re, im) pairs, row-major [rx][tx][freq]
inline constexpr std::uint16_t kSichVersion = 1;

enum class ChannelFormat { binary, csv };

static_assert(std::endian::native == std::endian::little,
              "channel container I/O assumes a little-endian host");

/// The container stores element totals, not grid shapes, so loaders fall back
/// to the most-square factorization (64 -> 8x8, 16 -> 4x4) with the wider
/// side along x. Pass explicit layouts to override.
inline ArrayLayout infer_square_layout(int element_count) {
    int best = 1;
    for (int a = 1; a * a <= element_count; ++a)
        if (element_count % a == 0) best = a;
    return ArrayLayout{element_count / best, best, 0.5};
}

namespace detail {

inline void apply_layout_hints(SiChannel& ch, int rx_total, int tx_total,
                               const std::optional<ArrayLayout>& rx_hint,
                               const std::optional<ArrayLayout>& tx_hint) {
    ch.rx_layout = rx_hint ? *rx_hint : infer_square_layout(rx_total);
    ch.tx_layout = tx_hint ? *tx_hint : infer_square_layout(tx_total);
    if (ch.rx_layout.element_count() != rx_total)
        throw std::invalid_argument("load_channel: rx layout hint covers " +
                                    std::to_string(ch.rx_layout.element_count()) +
                                    " elements, file holds " + std::to_string(rx_total));
    if (ch.tx_layout.element_count() != tx_total)
        throw std::invalid_argument("load_channel: tx layout hint covers " +
                                    std::to_string(ch.tx_layout.element_count()) +
                                    " elements, file holds " + std::to_string(tx_total));
}

inline void append_number(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

inline double parse_double(const char*& p, const char* end, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{})
        throw std::invalid_argument(std::string("channel csv: malformed ") + what + " field");
    p = res.ptr;
    return v;
}

inline int parse_int(const char*& p, const char* end, const char* what) {
    int v = 0;
    const auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc{} || v < 0)
        throw std::invalid_argument(std::string("channel csv: malformed ") + what + " field");
    p = res.ptr;
    return v;
}

inline void expect_comma(const char*& p, const char* end) {
    if (p == end || *p != ',') throw std::invalid_argument("channel csv: expected ','");
    ++p;
}

} // namespace detail

inline void save_channel_binary(const SiChannel& ch, const std::string& path) {
    ch.validate();
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("save_channel: cannot open '" + path + "' for writing");

    const std::uint32_t mu = static_cast<std::uint32_t>(ch.rx_count());
    const std::uint32_t md = static_cast<std::uint32_t>(ch.tx_count());
    const std::uint32_t n = static_cast<std::uint32_t>(ch.freq_count());
    f.write("SICH", 4);
    f.write(reinterpret_cast<const char*>(&kSichVersion), sizeof kSichVersion);
    f.write(reinterpret_cast<const char*>(&mu), sizeof mu);
    f.write(reinterpret_cast<const char*>(&md), sizeof md);
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    f.write(reinterpret_cast<const char*>(ch.freqs_hz.data()),
            static_cast<std::streamsize>(ch.freqs_hz.size() * sizeof(double)));
    // std::complex<double> is layout-compatible with double[2] (re, im)
    f.write(reinterpret_cast<const char*>(ch.tensor.data()),
            static_cast<std::streamsize>(ch.tensor.size() * sizeof(Complex)));
    if (!f) throw std::runtime_error("save_channel: write to '" + path + "' failed");
}

inline SiChannel load_channel_binary(const std::string& path,
                                     std::optional<ArrayLayout> tx_hint = {},
                                     std::optional<ArrayLayout> rx_hint = {}) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_channel: cannot open '" + path + "'");

    char magic[4] = {};
    std::uint16_t version = 0;
    std::uint32_t mu = 0, md = 0, n = 0;
    f.read(magic, 4);
    f.read(reinterpret_cast<char*>(&version), sizeof version);
    f.read(reinterpret_cast<char*>(&mu), sizeof mu);
    f.read(reinterpret_cast<char*>(&md), sizeof md);
    f.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!f || std::memcmp(magic, "SICH", 4) != 0)
        throw std::invalid_argument("load_channel: malformed header in '" + path + "'");
    if (version != kSichVersion)
        throw std::invalid_argument("load_channel: unsupported container version " +
                                    std::to_string(version));
    if (mu == 0 || md == 0 || n == 0)
        throw std::invalid_argument("load_channel: header declares empty dimensions");

    SiChannel ch;
    ch.freqs_hz.resize(n);
    f.read(reinterpret_cast<char*>(ch.freqs_hz.data()),
           static_cast<std::streamsize>(n * sizeof(double)));
    const std::uint64_t entries = std::uint64_t{mu} * md * n;
    ch.tensor.resize(entries);
    f.read(reinterpret_cast<char*>(ch.tensor.data()),
           static_cast<std::streamsize>(entries * sizeof(Complex)));
    if (!f)
        throw std::invalid_argument("load_channel: dimension mismatch, '" + path + "' declares " +
                                    std::to_string(mu) + "x" + std::to_string(md) + "x" +
                                    std::to_string(n) + " but the payload is truncated");
    if (f.peek() != std::ifstream::traits_type::eof())
        throw std::invalid_argument("load_channel: trailing bytes after declared payload");

    detail::apply_layout_hints(ch, static_cast<int>(mu), static_cast<int>(md), rx_hint, tx_hint);
    for (std::size_t i = 1; i < ch.freqs_hz.size(); ++i)
        if (!(ch.freqs_hz[i] > ch.freqs_hz[i - 1]))
            throw std::invalid_argument("load_channel: non-monotone frequency grid");
    ch.validate();
    return ch;
}

inline void save_channel_csv(const SiChannel& ch, const std::string& path) {
    ch.validate();
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("save_channel: cannot open '" + path + "' for writing");

    std::string buf;
    buf.reserve(1 << 20);
    buf = "rx,tx,freq_hz,re,im\n";
    for (int u = 0; u < ch.rx_count(); ++u)
        for (int d = 0; d < ch.tx_count(); ++d)
            for (int k = 0; k < ch.freq_count(); ++k) {
                buf += std::to_string(u);
                buf += ',';
                buf += std::to_string(d);
                buf += ',';
                detail::append_number(buf, ch.freqs_hz[static_cast<std::size_t>(k)]);
                buf += ',';
                const Complex& v = ch.at(u, d, k);
                detail::append_number(buf, v.real());
                buf += ',';
                detail::append_number(buf, v.imag());
                buf += '\n';
                if (buf.size() > (1u << 20)) {
                    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
                    buf.clear();
                }
            }
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("save_channel: write to '" + path + "' failed");
}

inline SiChannel load_channel_csv(const std::string& path, std::optional<ArrayLayout> tx_hint = {},
                                  std::optional<ArrayLayout> rx_hint = {}) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_channel: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(f, line)) throw std::invalid_argument("load_channel: empty csv file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "rx,tx,freq_hz,re,im")
        throw std::invalid_argument("load_channel: malformed csv header '" + line + "'");

    struct Record {
        int rx, tx;
        double freq, re, im;
    };
    std::vector<Record> records;
    int max_rx = -1, max_tx = -1;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        Record r{};
        r.rx = detail::parse_int(p, end, "rx");
        detail::expect_comma(p, end);
        r.tx = detail::parse_int(p, end, "tx");
        detail::expect_comma(p, end);
        r.freq = detail::parse_double(p, end, "freq_hz");
        detail::expect_comma(p, end);
        r.re = detail::parse_double(p, end, "re");
        detail::expect_comma(p, end);
        r.im = detail::parse_double(p, end, "im");
        if (p != end) throw std::invalid_argument("load_channel: trailing characters in csv row");
        max_rx = std::max(max_rx, r.rx);
        max_tx = std::max(max_tx, r.tx);
        records.push_back(r);
    }
    if (records.empty()) throw std::invalid_argument("load_channel: csv has no data rows");

    std::vector<double> freqs;
    freqs.reserve(records.size());
    for (const Record& r : records) freqs.push_back(r.freq);
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());

    const int mu = max_rx + 1, md = max_tx + 1, n = static_cast<int>(freqs.size());
    const std::size_t expected = static_cast<std::size_t>(mu) * static_cast<std::size_t>(md) *
                                 static_cast<std::size_t>(n);
    if (records.size() != expected)
        throw std::invalid_argument("load_channel: csv dimension mismatch, got " +
                                    std::to_string(records.size()) + " rows for " +
                                    std::to_string(mu) + "x" + std::to_string(md) + "x" +
                                    std::to_string(n));

    SiChannel ch;
    ch.freqs_hz = freqs;
    ch.tensor.assign(expected, Complex{0.0, 0.0});
    std::vector<char> seen(expected, 0);
    for (const Record& r : records) {
        const auto it = std::lower_bound(freqs.begin(), freqs.end(), r.freq);
        const int k = static_cast<int>(it - freqs.begin());
        const std::size_t idx = (static_cast<std::size_t>(r.rx) * static_cast<std::size_t>(md) +
                                 static_cast<std::size_t>(r.tx)) *
                                    static_cast<std::size_t>(n) +
                                static_cast<std::size_t>(k);
        if (seen[idx]) throw std::invalid_argument("load_channel: duplicate csv entry");
        seen[idx] = 1;
        ch.tensor[idx] = Complex{r.re, r.im};
    }
    // every (rx, tx, freq) cell must appear exactly once
    for (char s : seen)
        if (!s) throw std::invalid_argument("load_channel: csv is missing tensor entries");

    detail::apply_layout_hints(ch, mu, md, rx_hint, tx_hint);
    ch.validate();
    return ch;
}

inline void save_channel(const SiChannel& ch, const std::string& path, ChannelFormat format) {
    if (format == ChannelFormat::binary)
        save_channel_binary(ch, path);
    else
        save_channel_csv(ch, path);
}

inline SiChannel load_channel(const std::string& path, ChannelFormat format,
                              std::optional<ArrayLayout> tx_hint = {},
                              std::optional<ArrayLayout> rx_hint = {}) {
    return format == ChannelFormat::binary ? load_channel_binary(path, tx_hint, rx_hint)
                                           : load_channel_csv(path, tx_hint, rx_hint);
}

} // namespace sibeam
