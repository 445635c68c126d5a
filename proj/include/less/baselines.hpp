#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "less/scattering.hpp"

namespace less {

// ---------------------------------------------------------------- SAX ----

struct SaxParams {
    int word_length = 100;   // PAA frame count
    int alphabet_size = 10;  // symbols, 2..26
};

/// Piecewise aggregate approximation: L frame means, frames as equal as
/// possible with the remainder samples going to the leading frames.
inline Eigen::VectorXd paa(const Eigen::VectorXd& x, int L) {
    const Eigen::Index t = x.size();
    if (L < 1 || L > t) throw std::invalid_argument("paa: L must be in [1, len(x)]");
    const Eigen::Index base = t / L, rem = t % L;
    Eigen::VectorXd out(L);
    Eigen::Index pos = 0;
    for (int i = 0; i < L; ++i) {
        const Eigen::Index len = base + (i < rem ? 1 : 0);
        out[i] = x.segment(pos, len).mean();
        pos += len;
    }
    return out;
}

namespace detail {

/// Inverse standard-normal CDF: Acklam's rational approximation polished
/// with one Newton step against the erfc-exact CDF.
inline double inverse_normal_cdf(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("inverse_normal_cdf: p must be in (0, 1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    return x - (cdf - p) / pdf;
}

}  // namespace detail

/// The alphabet_size - 1 equiprobable cut points of N(0, 1), ascending.
inline std::vector<double> sax_breakpoints(int alphabet_size) {
    if (alphabet_size < 2 || alphabet_size > 26)
        throw std::invalid_argument("sax_breakpoints: alphabet size must be in [2, 26]");
    std::vector<double> bp(static_cast<std::size_t>(alphabet_size) - 1);
    for (int i = 1; i < alphabet_size; ++i)
        bp[static_cast<std::size_t>(i) - 1] =
            detail::inverse_normal_cdf(static_cast<double>(i) / alphabet_size);
    return bp;
}

/// z-normalize, PAA, then quantize against the N(0,1) breakpoints.
/// Tokens are 1..alphabet_size; a constant input maps to the middle symbol.
inline std::vector<int> sax_word(const Eigen::VectorXd& x, const SaxParams& params) {
    if (x.size() < params.word_length)
        throw std::invalid_argument("sax_word: series shorter than word_length");
    const double mean = x.mean();
    const double sd = std::sqrt((x.array() - mean).square().mean());
    const Eigen::VectorXd z = sd > 0.0 ? ((x.array() - mean) / sd).matrix().eval()
                                       : Eigen::VectorXd::Zero(x.size()).eval();
    const Eigen::VectorXd coeffs = paa(z, params.word_length);
    const std::vector<double> bp = sax_breakpoints(params.alphabet_size);
    std::vector<int> word(static_cast<std::size_t>(params.word_length));
    for (int i = 0; i < params.word_length; ++i) {
        int tok = 1;
        for (double cut : bp)
            if (cut < coeffs[i]) ++tok;
        word[static_cast<std::size_t>(i)] = tok;
    }
    return word;
}

/// Classic SAX lower-bound distance between two words from series of the
/// same original length.
inline double sax_mindist(const std::vector<int>& wa, const std::vector<int>& wb, int alphabet_size,
                          Eigen::Index original_len) {
    if (wa.size() != wb.size()) throw std::invalid_argument("sax_mindist: word length mismatch");
    if (wa.empty()) return 0.0;
    const std::vector<double> bp = sax_breakpoints(alphabet_size);
    double sum = 0.0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const int lo = std::min(wa[i], wb[i]), hi = std::max(wa[i], wb[i]);
        if (hi - lo > 1) {
            const double cell = bp[static_cast<std::size_t>(hi) - 2] - bp[static_cast<std::size_t>(lo) - 1];
            sum += cell * cell;
        }
    }
    return std::sqrt(static_cast<double>(original_len) / static_cast<double>(wa.size())) *
           std::sqrt(sum);
}

// ---------------------------------------------------------------- DTW ----

/// Monotone alignment between two index ranges, with its total cost.
struct WarpPath {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    double cost = 0.0;
};

namespace detail {

/// Column range [lo, hi) of admissible cells for each row of the DP grid.
using DtwWindow = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

/// DTW over an explicit window with steps {(1,0),(0,1),(1,1)}. Backtracking
/// breaks ties diagonal-first, then by consuming from the first sequence.
template <class Metric>
WarpPath dtw_windowed(Eigen::Index la, Eigen::Index lb, const DtwWindow& window, Metric&& metric) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(la));
    for (Eigen::Index i = 0; i < la; ++i)
        cost[static_cast<std::size_t>(i)].assign(
            static_cast<std::size_t>(window[static_cast<std::size_t>(i)].second -
                                     window[static_cast<std::size_t>(i)].first),
            inf);

    auto at = [&](Eigen::Index i, Eigen::Index j) -> double {
        if (i < 0 || j < 0) return inf;
        const auto& [lo, hi] = window[static_cast<std::size_t>(i)];
        if (j < lo || j >= hi) return inf;
        return cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - lo)];
    };

    for (Eigen::Index i = 0; i < la; ++i) {
        const auto& [lo, hi] = window[static_cast<std::size_t>(i)];
        for (Eigen::Index j = lo; j < hi; ++j) {
            double best;
            if (i == 0 && j == 0)
                best = 0.0;
            else
                best = std::min({at(i - 1, j - 1), at(i - 1, j), at(i, j - 1)});
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - lo)] =
                best + metric(i, j);
        }
    }

    WarpPath path;
    path.cost = at(la - 1, lb - 1);
    Eigen::Index i = la - 1, j = lb - 1;
    path.pairs.emplace_back(i, j);
    while (i > 0 || j > 0) {
        const double diag = at(i - 1, j - 1), up = at(i - 1, j), left = at(i, j - 1);
        const double best = std::min({diag, up, left});
        if (diag == best) {
            --i;
            --j;
        } else if (up == best) {
            --i;
        } else {
            --j;
        }
        path.pairs.emplace_back(i, j);
    }
    std::reverse(path.pairs.begin(), path.pairs.end());
    return path;
}

inline DtwWindow full_window(Eigen::Index la, Eigen::Index lb) {
    return DtwWindow(static_cast<std::size_t>(la), {0, lb});
}

}  // namespace detail

/// Exact DTW between index ranges with a caller-provided point metric.
template <class Metric>
WarpPath dtw(Eigen::Index la, Eigen::Index lb, Metric&& metric) {
    if (la < 1 || lb < 1) throw std::invalid_argument("dtw: sequences must be non-empty");
    return detail::dtw_windowed(la, lb, detail::full_window(la, lb),
                                std::forward<Metric>(metric));
}

/// Exact DTW between two multivariate sequences (one point per column).
inline WarpPath dtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("dtw: point dimension mismatch");
    return dtw(a.cols(), b.cols(),
               [&](Eigen::Index i, Eigen::Index j) { return (a.col(i) - b.col(j)).norm(); });
}

inline WarpPath dtw(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return dtw(a.size(), b.size(),
               [&](Eigen::Index i, Eigen::Index j) { return std::abs(a[i] - b[j]); });
}

namespace detail {

/// Halve a sequence by averaging adjacent column pairs (odd tail kept).
inline Eigen::MatrixXd coarsen(const Eigen::MatrixXd& x) {
    const Eigen::Index half = (x.cols() + 1) / 2;
    Eigen::MatrixXd out(x.rows(), half);
    for (Eigen::Index i = 0; i < x.cols() / 2; ++i)
        out.col(i) = 0.5 * (x.col(2 * i) + x.col(2 * i + 1));
    if (x.cols() % 2) out.col(half - 1) = x.col(x.cols() - 1);
    return out;
}

/// Project a coarse warp path to the finer grid and widen it by `radius`.
inline DtwWindow expand_window(const WarpPath& coarse, Eigen::Index la, Eigen::Index lb,
                               int radius) {
    constexpr Eigen::Index none = -1;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> range(
        static_cast<std::size_t>(la), {none, none});
    auto mark = [&](Eigen::Index i, Eigen::Index j0, Eigen::Index j1) {
        if (i < 0 || i >= la) return;
        j0 = std::max<Eigen::Index>(j0, 0);
        j1 = std::min<Eigen::Index>(j1, lb - 1);
        if (j0 > j1) return;
        auto& r = range[static_cast<std::size_t>(i)];
        if (r.first == none) {
            r = {j0, j1};
        } else {
            r.first = std::min(r.first, j0);
            r.second = std::max(r.second, j1);
        }
    };
    for (const auto& [ci, cj] : coarse.pairs) {
        // each coarse cell covers a 2x2 block of fine cells
        for (Eigen::Index di = 0; di < 2; ++di)
            mark(2 * ci + di, 2 * cj - radius, 2 * cj + 1 + radius);
    }
    // widen vertically by the same radius
    DtwWindow window(static_cast<std::size_t>(la));
    for (Eigen::Index i = 0; i < la; ++i) {
        Eigen::Index lo = lb, hi = -1;
        for (Eigen::Index s = std::max<Eigen::Index>(0, i - radius);
             s <= std::min<Eigen::Index>(la - 1, i + radius); ++s) {
            const auto& r = range[static_cast<std::size_t>(s)];
            if (r.first == none) continue;
            lo = std::min(lo, r.first);
            hi = std::max(hi, r.second);
        }
        if (hi < lo) {  // row uncovered; fall back to the full row
            lo = 0;
            hi = lb - 1;
        }
        window[static_cast<std::size_t>(i)] = {lo, hi + 1};
    }
    window.front().first = 0;
    window.back().second = lb;
    return window;
}

}  // namespace detail

/// FastDTW: recursive coarsening, path projection, and windowed refinement.
/// The base case (either length <= radius + 2) is solved exactly.
inline WarpPath fastdtw(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int radius) {
    if (radius < 0) throw std::invalid_argument("fastdtw: radius must be non-negative");
    if (a.rows() != b.rows()) throw std::invalid_argument("fastdtw: point dimension mismatch");
    if (a.cols() <= radius + 2 || b.cols() <= radius + 2) return dtw(a, b);
    const WarpPath coarse = fastdtw(detail::coarsen(a), detail::coarsen(b), radius);
    const detail::DtwWindow window = detail::expand_window(coarse, a.cols(), b.cols(), radius);
    return detail::dtw_windowed(
        a.cols(), b.cols(), window,
        [&](Eigen::Index i, Eigen::Index j) { return (a.col(i) - b.col(j)).norm(); });
}

inline WarpPath fastdtw(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int radius) {
    return fastdtw(Eigen::MatrixXd(a.transpose()), Eigen::MatrixXd(b.transpose()), radius);
}

/// Approximate DTW between two representations' frame trajectories.
inline double dtw_wavelet(const ScatterRepresentation& za, const ScatterRepresentation& zb,
                          int radius) {
    if (za.coeffs.rows() != zb.coeffs.rows())
        throw std::invalid_argument("dtw_wavelet: channel count mismatch");
    return fastdtw(za.coeffs, zb.coeffs, radius).cost;
}

}  // namespace less
