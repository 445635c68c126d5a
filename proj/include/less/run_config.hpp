#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "less/baselines.hpp"
#include "less/scattering.hpp"
#include "less/spectral.hpp"

namespace less {

inline NormalizeMode parse_normalize_mode(const std::string& name) {
    if (name == "per-channel-max") return NormalizeMode::per_channel_max;
    if (name == "log1p-standardize") return NormalizeMode::log1p_standardize;
    if (name == "none") return NormalizeMode::none;
    throw std::invalid_argument("unknown normalize mode: " + name);
}

inline std::string to_string(NormalizeMode mode) {
    switch (mode) {
        case NormalizeMode::per_channel_max: return "per-channel-max";
        case NormalizeMode::log1p_standardize: return "log1p-standardize";
        case NormalizeMode::none: return "none";
    }
    return "per-channel-max";
}

/// Every pipeline parameter in one place; the CLI mirrors these fields as
/// flags and they round-trip through a JSON config file.
struct RunConfig {
    int J = 6;
    int Q = 2;
    int num_low_freq = 16;
    int max_order = 2;
    std::string normalize_mode = "per-channel-max";
    double sigma_omega = 0.45;
    int C = 7;
    int gamma = 3;
    int k = 7;
    std::uint64_t seed = 42;
    std::string metric = "less-levenshtein";
    int radius = 10;          // fastdtw window radius
    int word_length = 100;    // SAX
    int alphabet = 10;        // SAX
    bool row_normalize = false;

    ScatterParams scatter_params() const { return {J, Q, num_low_freq, max_order}; }

    SegmentConfig segment_config() const {
        SegmentConfig cfg;
        cfg.sigma_omega = sigma_omega;
        cfg.C = C;
        cfg.gamma = gamma;
        cfg.k = k;
        cfg.seed = seed;
        cfg.row_normalize = row_normalize;
        return cfg;
    }

    SaxParams sax_params() const { return {word_length, alphabet}; }
};

}  // namespace less
