#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "less/scattering.hpp"

namespace less {

/// Weighted graph over the n time frames of a representation.
struct AffinityGraph {
    Eigen::MatrixXd W;     // symmetric affinities in (0, 1], unit diagonal
    Eigen::MatrixXd dist;  // underlying Euclidean distances
    double sigma_omega = 0.45;
    int C = 0;                 // neighbor count used for the kernel sizes
    Eigen::VectorXd N;         // mean C-nearest-neighbor distance per frame
};

/// Euclidean distances between frame columns; each pair computed once and
/// mirrored so the result is exactly symmetric.
inline Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& coeffs) {
    const Eigen::Index n = coeffs.cols();
    if (n < 2) throw std::invalid_argument("pairwise_distances: need at least 2 frames");
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double d = (coeffs.col(a) - coeffs.col(b)).norm();
            dist(a, b) = d;
            dist(b, a) = d;
        }
    return dist;
}

inline Eigen::MatrixXd pairwise_distances(const ScatterRepresentation& z) {
    return pairwise_distances(z.coeffs);
}

/// Scales all entries by the global maximum so they lie in [0, 1].
inline Eigen::MatrixXd normalize_distances(const Eigen::MatrixXd& dist) {
    const double mx = dist.maxCoeff();
    if (mx <= 0.0)
        throw std::invalid_argument(
            "normalize_distances: all pairwise distances are zero; the signal has a single trivial event");
    return dist / mx;
}

/// N[t] = mean distance from frame t to its C nearest neighbors.
inline Eigen::VectorXd adaptive_kernel_sizes(const Eigen::MatrixXd& dist, int C) {
    const Eigen::Index n = dist.rows();
    if (C < 1 || C > n - 1)
        throw std::invalid_argument("adaptive_kernel_sizes: C must be in [1, n-1]");
    Eigen::VectorXd N(n);
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n) - 1);
    for (Eigen::Index t = 0; t < n; ++t) {
        row.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != t) row.push_back(dist(t, j));
        std::nth_element(row.begin(), row.begin() + (C - 1), row.end());
        double sum = 0.0;
        for (int i = 0; i < C; ++i) sum += row[static_cast<std::size_t>(i)];
        N[t] = sum / C;
    }
    return N;
}

/// W[a][b] = exp(-d^2 / (sigma_omega * sigma_ab)) with the locally adaptive
/// scale sigma_ab = (N[a] + N[b] + d) / 3. Coincident frames get affinity 1.
inline AffinityGraph affinity(const Eigen::MatrixXd& dist, const Eigen::VectorXd& N,
                              double sigma_omega, int C = 0) {
    if (sigma_omega <= 0.0) throw std::invalid_argument("affinity: sigma_omega must be positive");
    const Eigen::Index n = dist.rows();
    if (N.size() != n) throw std::invalid_argument("affinity: kernel-size vector does not match dist");
    AffinityGraph g;
    g.dist = dist;
    g.sigma_omega = sigma_omega;
    g.C = C;
    g.N = N;
    g.W = Eigen::MatrixXd::Ones(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double d = dist(a, b);
            double w = 1.0;
            if (d > 0.0) {
                const double sigma_ab = (N[a] + N[b] + d) / 3.0;
                w = std::exp(-d * d / (sigma_omega * sigma_ab));
            }
            g.W(a, b) = w;
            g.W(b, a) = w;
        }
    return g;
}

}  // namespace less
