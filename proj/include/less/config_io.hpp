#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "less/run_config.hpp"

namespace less {

inline nlohmann::json run_config_to_json(const RunConfig& cfg) {
    return {{"J", cfg.J},
            {"Q", cfg.Q},
            {"num_low_freq", cfg.num_low_freq},
            {"max_order", cfg.max_order},
            {"normalize_mode", cfg.normalize_mode},
            {"sigma_omega", cfg.sigma_omega},
            {"C", cfg.C},
            {"gamma", cfg.gamma},
            {"k", cfg.k},
            {"seed", cfg.seed},
            {"metric", cfg.metric},
            {"radius", cfg.radius},
            {"word_length", cfg.word_length},
            {"alphabet", cfg.alphabet},
            {"row_normalize", cfg.row_normalize}};
}

/// Overlays any keys present in the JSON onto `base`; missing keys keep
/// their current values, unknown keys are rejected.
inline RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {}) {
    static const char* known[] = {"J",     "Q",      "num_low_freq", "max_order",
                                  "normalize_mode", "sigma_omega",  "C",
                                  "gamma", "k",      "seed",         "metric",
                                  "radius", "word_length", "alphabet", "row_normalize"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* name : known) ok = ok || key == name;
        if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (j.contains("J")) base.J = j["J"].get<int>();
    if (j.contains("Q")) base.Q = j["Q"].get<int>();
    if (j.contains("num_low_freq")) base.num_low_freq = j["num_low_freq"].get<int>();
    if (j.contains("max_order")) base.max_order = j["max_order"].get<int>();
    if (j.contains("normalize_mode")) base.normalize_mode = j["normalize_mode"].get<std::string>();
    if (j.contains("sigma_omega")) base.sigma_omega = j["sigma_omega"].get<double>();
    if (j.contains("C")) base.C = j["C"].get<int>();
    if (j.contains("gamma")) base.gamma = j["gamma"].get<int>();
    if (j.contains("k")) base.k = j["k"].get<int>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("metric")) base.metric = j["metric"].get<std::string>();
    if (j.contains("radius")) base.radius = j["radius"].get<int>();
    if (j.contains("word_length")) base.word_length = j["word_length"].get<int>();
    if (j.contains("alphabet")) base.alphabet = j["alphabet"].get<int>();
    if (j.contains("row_normalize")) base.row_normalize = j["row_normalize"].get<bool>();
    parse_normalize_mode(base.normalize_mode);  // fail fast on bad names
    return base;
}

inline RunConfig load_run_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return run_config_from_json(j, base);
}

inline void save_run_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("config: cannot open " + path + " for writing");
    out << run_config_to_json(cfg).dump(2) << '\n';
}

}  // namespace less
