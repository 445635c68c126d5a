#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "less/csv_io.hpp"
#include "less/scattering.hpp"

namespace less {

/// Coefficients as CSV (rows x frames) plus a JSON sidecar describing each
/// row's order, wavelet path, and source dimension.
inline void write_scatter_csv(const ScatterRepresentation& rep, const std::string& csv_path,
                              const std::string& sidecar_path) {
    write_matrix_csv(rep.coeffs, csv_path);
    nlohmann::json j;
    j["n"] = rep.n;
    j["subsample"] = rep.subsample;
    j["channels"] = nlohmann::json::array();
    for (const auto& tag : rep.channel_index)
        j["channels"].push_back({{"order", tag.order},
                                 {"lambda1", tag.lambda1},
                                 {"lambda2", tag.lambda2},
                                 {"source_dim", tag.source_dim}});
    std::ofstream out(sidecar_path);
    if (!out) throw std::runtime_error("write_scatter_csv: cannot open " + sidecar_path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_scatter_csv: write failed for " + sidecar_path);
}

}  // namespace less
