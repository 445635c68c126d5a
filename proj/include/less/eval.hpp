#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "less/baselines.hpp"
#include "less/events.hpp"
#include "less/run_config.hpp"
#include "less/scattering.hpp"
#include "less/spectral.hpp"
#include "less/synth.hpp"
#include "less/time_series.hpp"

namespace less {

/// Per-observation scattering, one clustering over the frame-concatenated
/// batch (so token identities are shared), then per-observation collapse.
/// Normalization is applied after concatenation to keep channels on a
/// common scale across observations.
inline std::vector<EventSequence> batch_segment(const std::vector<TimeSeries>& collection,
                                                const RunConfig& cfg) {
    if (collection.empty()) throw std::invalid_argument("batch_segment: empty collection");
    for (const auto& ts : collection)
        if (ts.sample_rate_hz != collection.front().sample_rate_hz)
            throw std::invalid_argument("batch_segment: mixed sample rates");
    for (const auto& ts : collection)
        if (ts.dims() != collection.front().dims())
            throw std::invalid_argument("batch_segment: mixed dimension counts");

    const ScatterParams sp = cfg.scatter_params();
    std::vector<Eigen::Index> frame_counts;
    ScatterRepresentation all;
    for (std::size_t i = 0; i < collection.size(); ++i) {
        ScatterRepresentation z = scatter_multivariate(collection[i], sp);
        frame_counts.push_back(z.n);
        if (i == 0) {
            all = std::move(z);
        } else {
            if (z.coeffs.rows() != all.coeffs.rows())
                throw std::invalid_argument("batch_segment: inconsistent channel counts");
            const Eigen::Index old = all.coeffs.cols();
            all.coeffs.conservativeResize(Eigen::NoChange, old + z.coeffs.cols());
            all.coeffs.rightCols(z.coeffs.cols()) = z.coeffs;
            all.n += z.n;
        }
    }
    all = normalize_rep(all, parse_normalize_mode(cfg.normalize_mode));

    const FrameLabels labels = segment(all, cfg.segment_config());

    std::vector<EventSequence> out;
    std::size_t offset = 0;
    for (Eigen::Index count : frame_counts) {
        FrameLabels part;
        part.k = labels.k;
        part.labels.assign(labels.labels.begin() + static_cast<std::ptrdiff_t>(offset),
                           labels.labels.begin() + static_cast<std::ptrdiff_t>(offset) +
                               static_cast<std::ptrdiff_t>(count));
        out.push_back(to_event_sequence(part, all.subsample));
        offset += static_cast<std::size_t>(count);
    }
    return out;
}

enum class Metric { less_levenshtein, dtw_raw, dtw_wavelet, sax_levenshtein, sax_mindist };

inline Metric parse_metric(const std::string& name) {
    if (name == "less-levenshtein") return Metric::less_levenshtein;
    if (name == "dtw-raw") return Metric::dtw_raw;
    if (name == "dtw-wavelet") return Metric::dtw_wavelet;
    if (name == "sax-levenshtein") return Metric::sax_levenshtein;
    if (name == "sax-mindist") return Metric::sax_mindist;
    throw std::invalid_argument(
        "unknown metric: " + name +
        " (expected less-levenshtein, dtw-raw, dtw-wavelet, sax-levenshtein, or sax-mindist)");
}

inline std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::less_levenshtein: return "less-levenshtein";
        case Metric::dtw_raw: return "dtw-raw";
        case Metric::dtw_wavelet: return "dtw-wavelet";
        case Metric::sax_levenshtein: return "sax-levenshtein";
        case Metric::sax_mindist: return "sax-mindist";
    }
    return "less-levenshtein";
}

struct DistanceMatrix {
    Eigen::MatrixXd values;           // symmetric, zero diagonal
    std::vector<std::string> labels;  // class label per observation (may be empty)
    std::string metric_name;
};

namespace detail {

/// SAX words per dimension; multivariate distances add up over dimensions.
inline std::vector<std::vector<int>> sax_words_per_dim(const TimeSeries& ts,
                                                       const SaxParams& params) {
    std::vector<std::vector<int>> words;
    for (Eigen::Index d = 0; d < ts.dims(); ++d)
        words.push_back(sax_word(ts.samples.row(d).transpose(), params));
    return words;
}

}  // namespace detail

/// All m(m-1)/2 pairwise distances under the chosen metric, mirrored into a
/// symmetric matrix with zero diagonal.
inline DistanceMatrix distance_matrix(const std::vector<TimeSeries>& collection, Metric metric,
                                      const RunConfig& cfg,
                                      std::vector<std::string> class_labels = {}) {
    if (collection.empty()) throw std::invalid_argument("distance_matrix: empty collection");
    if (!class_labels.empty() && class_labels.size() != collection.size())
        throw std::invalid_argument("distance_matrix: label count mismatch");
    const auto m = static_cast<Eigen::Index>(collection.size());
    DistanceMatrix dm;
    dm.values = Eigen::MatrixXd::Zero(m, m);
    dm.labels = std::move(class_labels);
    dm.metric_name = to_string(metric);

    auto fill = [&](auto&& pair_dist) {
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i + 1; j < m; ++j) {
                const double d = pair_dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                dm.values(i, j) = d;
                dm.values(j, i) = d;
            }
    };

    switch (metric) {
        case Metric::less_levenshtein: {
            const std::vector<EventSequence> events = batch_segment(collection, cfg);
            fill([&](std::size_t i, std::size_t j) {
                return static_cast<double>(levenshtein(events[i].tokens, events[j].tokens));
            });
            break;
        }
        case Metric::dtw_raw: {
            fill([&](std::size_t i, std::size_t j) {
                return fastdtw(collection[i].samples, collection[j].samples, cfg.radius).cost;
            });
            break;
        }
        case Metric::dtw_wavelet: {
            std::vector<ScatterRepresentation> reps;
            const NormalizeMode mode = parse_normalize_mode(cfg.normalize_mode);
            for (const auto& ts : collection)
                reps.push_back(normalize_rep(scatter_multivariate(ts, cfg.scatter_params()), mode));
            fill([&](std::size_t i, std::size_t j) {
                return dtw_wavelet(reps[i], reps[j], cfg.radius);
            });
            break;
        }
        case Metric::sax_levenshtein:
        case Metric::sax_mindist: {
            std::vector<std::vector<std::vector<int>>> words;
            for (const auto& ts : collection)
                words.push_back(detail::sax_words_per_dim(ts, cfg.sax_params()));
            fill([&](std::size_t i, std::size_t j) {
                double d = 0.0;
                for (std::size_t dim = 0; dim < words[i].size(); ++dim) {
                    if (metric == Metric::sax_levenshtein) {
                        d += levenshtein(words[i][dim], words[j][dim]);
                    } else {
                        // lengths may differ across observations; use their mean
                        const auto len = static_cast<Eigen::Index>(
                            (collection[i].length() + collection[j].length()) / 2);
                        d += sax_mindist(words[i][dim], words[j][dim], cfg.alphabet, len);
                    }
                }
                return d;
            });
            break;
        }
    }
    return dm;
}

struct SeparationStats {
    double within_mean = 0.0;
    double between_mean = 0.0;
    double ratio = 0.0;
    bool infinite_ratio = false;  // within_mean was exactly zero
};

/// Mean distance over same-class pairs vs cross-class pairs.
inline SeparationStats class_separation(const DistanceMatrix& dm) {
    const auto m = static_cast<std::size_t>(dm.values.rows());
    if (dm.labels.size() != m)
        throw std::invalid_argument("class_separation: distance matrix has no class labels");
    std::map<std::string, int> sizes;
    for (const auto& label : dm.labels) ++sizes[label];
    if (sizes.size() < 2) throw std::invalid_argument("class_separation: need at least 2 classes");
    for (const auto& [label, count] : sizes)
        if (count < 2)
            throw std::invalid_argument("class_separation: class '" + label +
                                        "' needs at least 2 members");
    double within = 0.0, between = 0.0;
    std::size_t n_within = 0, n_between = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = dm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (dm.labels[i] == dm.labels[j]) {
                within += d;
                ++n_within;
            } else {
                between += d;
                ++n_between;
            }
        }
    SeparationStats stats;
    stats.within_mean = within / static_cast<double>(n_within);
    stats.between_mean = between / static_cast<double>(n_between);
    if (stats.within_mean == 0.0) {
        stats.infinite_ratio = true;
        stats.ratio = std::numeric_limits<double>::infinity();
    } else {
        stats.ratio = stats.between_mean / stats.within_mean;
    }
    return stats;
}

/// Adjusted Rand index between two labelings of the same frames. Two
/// identical trivial partitions (the degenerate 0/0 case) score 1.
inline double label_agreement(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("label_agreement: length mismatch");
    if (a.empty()) throw std::invalid_argument("label_agreement: empty labelings");
    std::map<std::pair<int, int>, std::int64_t> joint;
    std::map<int, std::int64_t> ca, cb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++joint[{a[i], b[i]}];
        ++ca[a[i]];
        ++cb[b[i]];
    }
    auto choose2 = [](std::int64_t v) { return 0.5 * static_cast<double>(v) * static_cast<double>(v - 1); };
    double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [key, v] : joint) sum_joint += choose2(v);
    for (const auto& [key, v] : ca) sum_a += choose2(v);
    for (const auto& [key, v] : cb) sum_b += choose2(v);
    const double total = choose2(static_cast<std::int64_t>(a.size()));
    const double expected = sum_a * sum_b / total;
    const double max_index = 0.5 * (sum_a + sum_b);
    if (max_index == expected) return 1.0;  // both partitions trivial and identical
    return (sum_joint - expected) / (max_index - expected);
}

// ---------------------------------------------------------- benchmarks ----

enum class BenchKind { scatter_vs_t, scatter_vs_D, spectral_vs_n };

inline BenchKind parse_bench_kind(const std::string& name) {
    if (name == "scatter-vs-t") return BenchKind::scatter_vs_t;
    if (name == "scatter-vs-D") return BenchKind::scatter_vs_D;
    if (name == "spectral-vs-n") return BenchKind::spectral_vs_n;
    throw std::invalid_argument("unknown bench kind: " + name +
                                " (expected scatter-vs-t, scatter-vs-D, or spectral-vs-n)");
}

struct BenchRow {
    double size = 0.0;
    double median_seconds = 0.0;
};

struct BenchReport {
    std::string kind;
    std::vector<BenchRow> rows;
    double loglog_slope = 0.0;
};

namespace detail {

/// Median of five samples; each sample averages enough repeats to stay
/// above timer noise.
inline double median_of_five(const std::function<void()>& body) {
    using clock = std::chrono::steady_clock;
    auto timed = [&](int repeats) {
        const auto begin = clock::now();
        for (int r = 0; r < repeats; ++r) body();
        return std::chrono::duration<double>(clock::now() - begin).count() / repeats;
    };
    const double estimate = timed(1);
    const int repeats = estimate > 0.0
                            ? std::clamp(static_cast<int>(std::ceil(0.005 / estimate)), 1, 1000)
                            : 1000;
    std::vector<double> samples(5);
    for (auto& s : samples) s = timed(repeats);
    std::nth_element(samples.begin(), samples.begin() + 2, samples.end());
    return samples[2];
}

inline double fit_loglog_slope(const std::vector<BenchRow>& rows) {
    const auto n = static_cast<double>(rows.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : rows) {
        const double x = std::log(row.size), y = std::log(row.median_seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Wall-clock scaling probes: scattering against signal length and channel
/// count, and the spectral stage against frame count. Timing runs serially.
inline BenchReport bench_scaling(BenchKind kind, const std::vector<Eigen::Index>& sizes) {
    if (sizes.size() < 2) throw std::invalid_argument("bench_scaling: need at least 2 sizes");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("bench_scaling: sizes must be ascending");

    BenchReport report;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = gauss(rng);
        return m;
    };

    for (const Eigen::Index size : sizes) {
        double median = 0.0;
        switch (kind) {
            case BenchKind::scatter_vs_t: {
                report.kind = "scatter-vs-t";
                const ScatterParams sp{6, 2, 8, 2};
                const Eigen::VectorXd x = random_matrix(1, size).row(0).transpose();
                const FilterBank bank = build_filter_bank(sp, size);
                median = detail::median_of_five([&] { scatter_1d(x, bank, sp); });
                break;
            }
            case BenchKind::scatter_vs_D: {
                report.kind = "scatter-vs-D";
                const ScatterParams sp{6, 2, 8, 2};
                TimeSeries ts;
                ts.samples = random_matrix(size, 8192);
                ts.sample_rate_hz = 8000.0;
                median = detail::median_of_five([&] { scatter_multivariate(ts, sp); });
                break;
            }
            case BenchKind::spectral_vs_n: {
                report.kind = "spectral-vs-n";
                ScatterRepresentation z;
                z.coeffs = random_matrix(16, size).cwiseAbs();
                z.n = size;
                z.subsample = 64;
                SegmentConfig cfg;
                median = detail::median_of_five([&] { segment(z, cfg); });
                break;
            }
        }
        report.rows.push_back({static_cast<double>(size), median});
    }
    report.loglog_slope = detail::fit_loglog_slope(report.rows);
    return report;
}

inline void write_bench_csv(const BenchReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_bench_csv: cannot open " + path);
    out << "size,median_seconds\n";
    for (const auto& row : report.rows)
        out << static_cast<long long>(row.size) << ',' << row.median_seconds << '\n';
    if (!out) throw std::runtime_error("write_bench_csv: write failed for " + path);
}

}  // namespace less
