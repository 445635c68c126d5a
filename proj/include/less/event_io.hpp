#pragma once

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "less/events.hpp"

namespace less {

inline nlohmann::json event_to_json(const EventSequence& e) {
    nlohmann::json j;
    j["k"] = e.k;
    j["subsample"] = e.subsample;
    j["tokens"] = e.tokens;
    j["frame_runs"] = nlohmann::json::array();
    for (const auto& run : e.frame_runs)
        j["frame_runs"].push_back({{"token", run.token}, {"start", run.start}, {"end", run.end}});
    return j;
}

inline EventSequence event_from_json(const nlohmann::json& j) {
    EventSequence e;
    e.k = j.at("k").get<int>();
    e.subsample = j.at("subsample").get<Eigen::Index>();
    e.tokens = j.at("tokens").get<std::vector<int>>();
    for (const auto& run : j.at("frame_runs"))
        e.frame_runs.push_back({run.at("token").get<int>(), run.at("start").get<Eigen::Index>(),
                                run.at("end").get<Eigen::Index>()});
    return e;
}

inline void write_event_json(const EventSequence& e, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_event_json: cannot open " + path);
    out << event_to_json(e).dump(2) << '\n';
    if (!out) throw std::runtime_error("write_event_json: write failed for " + path);
}

inline EventSequence load_event_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_event_json: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return event_from_json(j);
}

/// Compact text form `k:e:tokens`, e.g. "3:8:1 2 1 4 2" for k=3 and
/// subsample 2^8.
inline std::string format_compact(const EventSequence& e) {
    const auto sub = static_cast<std::uint64_t>(e.subsample);
    if (sub == 0 || (sub & (sub - 1)) != 0)
        throw std::invalid_argument("format_compact: subsample must be a power of two");
    std::ostringstream out;
    out << e.k << ':' << std::countr_zero(sub) << ':';
    for (std::size_t i = 0; i < e.tokens.size(); ++i) {
        if (i) out << ' ';
        out << e.tokens[i];
    }
    return out.str();
}

inline EventSequence parse_compact(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("parse_compact: expected k:subsample-exponent:tokens");
    EventSequence e;
    e.k = std::stoi(text.substr(0, c1));
    e.subsample = Eigen::Index(1) << std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
    std::istringstream tokens(text.substr(c2 + 1));
    Eigen::Index start = 0;
    int tok;
    while (tokens >> tok) {
        e.tokens.push_back(tok);
        e.frame_runs.push_back({tok, start, start + 1});  // unit runs; extents are not transmitted
        ++start;
    }
    return e;
}

/// Per-sample annotation as CSV rows (sample index, token).
inline void write_annotation_csv(const std::vector<int>& annotation, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_annotation_csv: cannot open " + path);
    out << "sample,token\n";
    for (std::size_t s = 0; s < annotation.size(); ++s) out << s << ',' << annotation[s] << '\n';
    if (!out) throw std::runtime_error("write_annotation_csv: write failed for " + path);
}

}  // namespace less
