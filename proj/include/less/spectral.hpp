#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "less/trajectory_graph.hpp"

namespace less {

struct LaplacianEmbedding {
    Eigen::MatrixXd coords;      // n x gamma, row per frame
    Eigen::VectorXd eigenvalues; // gamma smallest, ascending
    int gamma = 3;
};

struct FrameLabels {
    std::vector<int> labels;  // values in {1..k}, canonical first-occurrence order
    int k = 0;
    double inertia = 0.0;
};

/// L_sym = I - D^(-1/2) W D^(-1/2), symmetrized to machine precision.
inline Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& W) {
    const Eigen::Index n = W.rows();
    if (W.cols() != n) throw std::invalid_argument("normalized_laplacian: W must be square");
    Eigen::VectorXd degree = W.rowwise().sum();
    if ((degree.array() <= 0.0).any())
        throw std::invalid_argument("normalized_laplacian: zero-degree vertex");
    Eigen::VectorXd inv_sqrt = degree.array().rsqrt().matrix();
    Eigen::MatrixXd L =
        Eigen::MatrixXd::Identity(n, n) - inv_sqrt.asDiagonal() * W * inv_sqrt.asDiagonal();
    return 0.5 * (L + L.transpose());
}

/// Eigenpairs with the gamma smallest eigenvalues (dense solver). Each
/// eigenvector is flipped so its largest-magnitude entry is positive.
inline LaplacianEmbedding embed(const Eigen::MatrixXd& L, int gamma) {
    const Eigen::Index n = L.rows();
    if (gamma < 1 || gamma > n) throw std::invalid_argument("embed: gamma must be in [1, n]");
    if (!L.allFinite()) throw std::invalid_argument("embed: non-finite Laplacian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) throw std::runtime_error("embed: eigensolver failed");
    LaplacianEmbedding out;
    out.gamma = gamma;
    out.eigenvalues = solver.eigenvalues().head(gamma);
    out.coords = solver.eigenvectors().leftCols(gamma);
    for (int c = 0; c < gamma; ++c) {
        Eigen::Index at = 0;
        out.coords.col(c).cwiseAbs().maxCoeff(&at);
        if (out.coords(at, c) < 0.0) out.coords.col(c) = -out.coords.col(c);
    }
    return out;
}

namespace detail {

inline Eigen::Index nearest_center(const Eigen::MatrixXd& centers, const Eigen::VectorXd& point) {
    Eigen::Index best = 0;
    double best_d = (centers.row(0).transpose() - point).squaredNorm();
    for (Eigen::Index c = 1; c < centers.rows(); ++c) {
        const double d = (centers.row(c).transpose() - point).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

struct KmeansRun {
    std::vector<int> assign;
    double inertia = std::numeric_limits<double>::infinity();
};

/// One k-means++ seeded Lloyd run over the rows of X.
inline KmeansRun lloyd_once(const Eigen::MatrixXd& X, int k, std::uint64_t seed) {
    const Eigen::Index n = X.rows();
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd centers(k, X.cols());

    // k-means++: spread initial centers proportionally to squared distance
    std::uniform_int_distribution<Eigen::Index> uniform(0, n - 1);
    centers.row(0) = X.row(uniform(rng));
    Eigen::VectorXd d2(n);
    for (Eigen::Index i = 0; i < n; ++i)
        d2[i] = (X.row(i) - centers.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        Eigen::Index pick;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng), acc = 0.0;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = uniform(rng);
        }
        centers.row(c) = X.row(pick);
        for (Eigen::Index i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], (X.row(i) - centers.row(c)).squaredNorm());
    }

    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    for (int iter = 0; iter < 300; ++iter) {
        for (Eigen::Index i = 0; i < n; ++i)
            assign[static_cast<std::size_t>(i)] =
                static_cast<int>(nearest_center(centers, X.row(i).transpose()));

        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, X.cols());
        std::vector<Eigen::Index> count(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            next.row(assign[static_cast<std::size_t>(i)]) += X.row(i);
            ++count[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
        }
        std::vector<bool> reseeded(static_cast<std::size_t>(n), false);
        for (int c = 0; c < k; ++c) {
            if (count[static_cast<std::size_t>(c)] > 0) {
                next.row(c) /= static_cast<double>(count[static_cast<std::size_t>(c)]);
            } else {
                // reseed an empty cluster from the point farthest from its center
                Eigen::Index far = -1;
                double far_d = -1.0;
                for (Eigen::Index i = 0; i < n; ++i) {
                    if (reseeded[static_cast<std::size_t>(i)]) continue;
                    const double d =
                        (X.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next.row(c) = X.row(far);
                assign[static_cast<std::size_t>(far)] = c;
                reseeded[static_cast<std::size_t>(far)] = true;
            }
        }
        const double shift = (next - centers).rowwise().norm().maxCoeff();
        centers = next;
        if (shift < 1e-10) break;
    }

    KmeansRun run;
    for (Eigen::Index i = 0; i < n; ++i)
        assign[static_cast<std::size_t>(i)] =
            static_cast<int>(nearest_center(centers, X.row(i).transpose()));
    run.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        run.inertia += (X.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
    run.assign = std::move(assign);
    return run;
}

}  // namespace detail

/// k-means++ with Lloyd iterations; best of `restarts` runs by inertia
/// (ties go to the earliest restart). Labels are renumbered 1..k in order
/// of first appearance along the frame axis.
inline FrameLabels kmeans(const LaplacianEmbedding& embedding, int k, std::uint64_t seed,
                          int restarts = 10) {
    const Eigen::MatrixXd& X = embedding.coords;
    const Eigen::Index n = X.rows();
    if (k < 1 || k > n) throw std::invalid_argument("kmeans: k must be in [1, n]");
    std::set<std::vector<double>> distinct;
    for (Eigen::Index i = 0; i < n; ++i)
        distinct.insert(std::vector<double>(X.row(i).begin(), X.row(i).end()));
    if (static_cast<std::size_t>(k) > distinct.size())
        throw std::invalid_argument("kmeans: k exceeds the number of distinct embedding rows");

    detail::KmeansRun best;
    for (int r = 0; r < restarts; ++r) {
        detail::KmeansRun run = detail::lloyd_once(X, k, seed + static_cast<std::uint64_t>(r));
        if (run.inertia < best.inertia) best = std::move(run);
    }

    FrameLabels out;
    out.k = k;
    out.inertia = best.inertia;
    std::vector<int> remap(static_cast<std::size_t>(k), 0);
    int next_label = 0;
    out.labels.resize(best.assign.size());
    for (std::size_t i = 0; i < best.assign.size(); ++i) {
        int& slot = remap[static_cast<std::size_t>(best.assign[i])];
        if (slot == 0) slot = ++next_label;
        out.labels[i] = slot;
    }
    return out;
}

/// Knobs for the graph + clustering half of the pipeline.
struct SegmentConfig {
    double sigma_omega = 0.45;
    int C = 7;
    int gamma = 3;
    int k = 7;
    std::uint64_t seed = 42;
    int restarts = 10;
    bool normalize_dist = true;  // scale distances by their global max first
    bool row_normalize = false;  // unit-norm embedding rows before k-means
};

/// Full clustering chain: distances (normalized by default), adaptive
/// kernels, affinity, normalized Laplacian, spectral embedding, k-means.
inline FrameLabels segment(const ScatterRepresentation& z, const SegmentConfig& cfg) {
    Eigen::MatrixXd dist = pairwise_distances(z.coeffs);
    if (cfg.normalize_dist) dist = normalize_distances(dist);
    const Eigen::VectorXd N = adaptive_kernel_sizes(dist, cfg.C);
    const AffinityGraph graph = affinity(dist, N, cfg.sigma_omega, cfg.C);
    const Eigen::MatrixXd L = normalized_laplacian(graph.W);
    LaplacianEmbedding emb = embed(L, cfg.gamma);
    if (cfg.row_normalize)
        for (Eigen::Index i = 0; i < emb.coords.rows(); ++i) {
            const double norm = emb.coords.row(i).norm();
            if (norm > 0.0) emb.coords.row(i) /= norm;
        }
    return kmeans(emb, cfg.k, cfg.seed, cfg.restarts);
}

}  // namespace less
