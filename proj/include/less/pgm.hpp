#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace less {

/// ASCII portable graymap of a matrix, min..max mapped to 0..255.
/// A constant matrix renders mid-gray.
inline void write_pgm(const Eigen::MatrixXd& m, const std::string& path) {
    if (m.size() == 0) throw std::invalid_argument("write_pgm: empty matrix");
    if (!m.allFinite()) throw std::invalid_argument("write_pgm: non-finite values");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    const double lo = m.minCoeff(), hi = m.maxCoeff();
    const double span = hi - lo;
    out << "P2\n" << m.cols() << ' ' << m.rows() << "\n255\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const int gray =
                span > 0.0 ? static_cast<int>(std::lround((m(r, c) - lo) / span * 255.0)) : 128;
            if (c) out << ' ';
            out << gray;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_pgm: write failed for " + path);
}

}  // namespace less
