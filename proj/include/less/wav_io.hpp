#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "less/time_series.hpp"

namespace less {

namespace detail {

inline std::uint32_t read_u32le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

inline std::uint16_t read_u16le(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return std::uint16_t(b[0] | b[1] << 8);
}

inline void write_u32le(std::ostream& out, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char(v >> 8 & 0xff), char(v >> 16 & 0xff), char(v >> 24 & 0xff)};
    out.write(b, 4);
}

inline void write_u16le(std::ostream& out, std::uint16_t v) {
    char b[2] = {char(v & 0xff), char(v >> 8 & 0xff)};
    out.write(b, 2);
}

}  // namespace detail

/// RIFF/WAVE reader for uncompressed PCM, 8-bit unsigned or 16-bit signed.
/// Channels become dimensions; samples map to [-1, 1).
inline TimeSeries load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    char tag[4];
    in.read(tag, 4);
    std::uint32_t riff_size = detail::read_u32le(in);
    (void)riff_size;
    char wave[4];
    in.read(wave, 4);
    if (!in || std::string(tag, 4) != "RIFF" || std::string(wave, 4) != "WAVE")
        throw std::runtime_error(path + ": not a RIFF/WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> payload;
    bool have_fmt = false, have_data = false;

    while (in && !(have_fmt && have_data)) {
        char id[4];
        in.read(id, 4);
        std::uint32_t size = detail::read_u32le(in);
        if (!in) break;
        std::string chunk(id, 4);
        if (chunk == "fmt ") {
            format = detail::read_u16le(in);
            channels = detail::read_u16le(in);
            rate = detail::read_u32le(in);
            detail::read_u32le(in);  // byte rate
            detail::read_u16le(in);  // block align
            bits = detail::read_u16le(in);
            if (size > 16) in.seekg(size - 16, std::ios::cur);
            have_fmt = true;
        } else if (chunk == "data") {
            payload.resize(size);
            in.read(payload.data(), size);
            have_data = true;
        } else {
            in.seekg(size, std::ios::cur);
        }
        if (size % 2) in.seekg(1, std::ios::cur);  // chunks are word-aligned
    }

    if (!have_fmt || !have_data) throw std::runtime_error(path + ": missing fmt or data chunk");
    if (format != 1)
        throw std::runtime_error(path + ": only uncompressed PCM is supported (format code " +
                                 std::to_string(format) + ")");
    if (bits != 8 && bits != 16)
        throw std::runtime_error(path + ": unsupported bit depth " + std::to_string(bits));
    if (channels == 0) throw std::runtime_error(path + ": zero channels");

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    const std::size_t frames = payload.size() / frame_bytes;
    if (frames == 0) throw std::runtime_error(path + ": empty data chunk");

    TimeSeries ts;
    ts.samples.resize(channels, static_cast<Eigen::Index>(frames));
    const auto* raw = reinterpret_cast<const unsigned char*>(payload.data());
    for (std::size_t i = 0; i < frames; ++i) {
        for (std::uint16_t c = 0; c < channels; ++c) {
            const unsigned char* p = raw + i * frame_bytes + c * bytes_per_sample;
            double v;
            if (bits == 8) {
                v = (int(p[0]) - 128) / 128.0;
            } else {
                auto s = static_cast<std::int16_t>(p[0] | p[1] << 8);
                v = s / 32768.0;
            }
            ts.samples(c, static_cast<Eigen::Index>(i)) = v;
        }
    }
    ts.sample_rate_hz = rate;
    ts.name = path;
    validate(ts);
    return ts;
}

/// Writes 16-bit PCM; values are scaled by 32768 and clamped.
inline void write_wav(const TimeSeries& ts, const std::string& path) {
    validate(ts);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_wav: cannot open " + path);

    const auto channels = static_cast<std::uint16_t>(ts.dims());
    const auto rate = static_cast<std::uint32_t>(std::lround(ts.sample_rate_hz));
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(ts.length()) * channels * 2;

    out.write("RIFF", 4);
    detail::write_u32le(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    detail::write_u32le(out, 16);
    detail::write_u16le(out, 1);  // PCM
    detail::write_u16le(out, channels);
    detail::write_u32le(out, rate);
    detail::write_u32le(out, rate * channels * 2);
    detail::write_u16le(out, channels * 2);
    detail::write_u16le(out, 16);
    out.write("data", 4);
    detail::write_u32le(out, data_bytes);

    for (Eigen::Index i = 0; i < ts.length(); ++i) {
        for (Eigen::Index c = 0; c < channels; ++c) {
            long v = std::lround(ts.samples(c, i) * 32768.0);
            v = std::max(-32768L, std::min(32767L, v));
            detail::write_u16le(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
        }
    }
    if (!out) throw std::runtime_error("write_wav: write failed for " + path);
}

}  // namespace less
