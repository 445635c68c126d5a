#pragma once

#include <Eigen/Dense>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "less/time_series.hpp"

namespace less {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

inline bool parse_double(const std::string& cell, double& out) {
    const char* b = cell.data();
    const char* e = b + cell.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    if (b == e) return false;
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e;
}

/// Decimal text that round-trips a double exactly.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Parses numeric rows; a single non-numeric leading row is treated as a
/// header and skipped. All rows must be finite and equally wide.
inline std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0, width = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        std::vector<double> vals(cells.size());
        bool numeric = true;
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!parse_double(cells[c], vals[c])) { numeric = false; break; }
        if (!numeric) {
            if (header_allowed) { header_allowed = false; continue; }
            throw std::runtime_error("non-numeric cell at " + path + ":" + std::to_string(lineno));
        }
        header_allowed = false;
        if (width == 0) width = vals.size();
        if (vals.size() != width)
            throw std::runtime_error("ragged row at " + path + ":" + std::to_string(lineno));
        for (double v : vals)
            if (!std::isfinite(v))
                throw std::runtime_error("non-finite value at " + path + ":" + std::to_string(lineno));
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::runtime_error("no data rows in " + path);
    return rows;
}

}  // namespace detail

/// Numeric CSV, one column per dimension and one row per time step.
inline TimeSeries load_csv(const std::string& path, double sample_rate_hz) {
    auto rows = detail::read_numeric_rows(path);
    TimeSeries ts;
    const auto width = static_cast<Eigen::Index>(rows[0].size());
    ts.samples.resize(width, static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index d = 0; d < width; ++d)
            ts.samples(d, static_cast<Eigen::Index>(i)) = rows[i][static_cast<std::size_t>(d)];
    ts.sample_rate_hz = sample_rate_hz;
    ts.name = path;
    validate(ts);
    return ts;
}

inline void write_csv(const TimeSeries& ts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (Eigen::Index i = 0; i < ts.length(); ++i) {
        for (Eigen::Index d = 0; d < ts.dims(); ++d) {
            if (d) out << ',';
            out << detail::format_double(ts.samples(d, i));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

/// Plain matrix export, one CSV row per matrix row.
inline void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << detail::format_double(m(r, c));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_matrix_csv: write failed for " + path);
}

inline Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    auto rows = detail::read_numeric_rows(path);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[0].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    return m;
}

}  // namespace less
