#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace less {

/// A D-dimensional sampled signal. Rows are dimensions, columns are time
/// steps, so samples(d, i) is dimension d at sample index i.
struct TimeSeries {
    Eigen::MatrixXd samples;
    double sample_rate_hz = 1.0;
    std::string name;

    Eigen::Index dims() const { return samples.rows(); }
    Eigen::Index length() const { return samples.cols(); }
};

inline void validate(const TimeSeries& ts) {
    if (ts.samples.rows() < 1 || ts.samples.cols() < 2)
        throw std::invalid_argument("TimeSeries: need D >= 1 and t >= 2, got " +
                                    std::to_string(ts.samples.rows()) + "x" +
                                    std::to_string(ts.samples.cols()));
    if (!(ts.sample_rate_hz > 0.0))
        throw std::invalid_argument("TimeSeries: sample_rate_hz must be positive");
    if (!ts.samples.allFinite())
        throw std::invalid_argument("TimeSeries '" + ts.name + "': non-finite sample");
}

/// Scale so the largest absolute sample becomes 1. A silent signal is
/// returned unchanged.
inline TimeSeries amplitude_normalize(const TimeSeries& ts) {
    TimeSeries out = ts;
    const double peak = ts.samples.cwiseAbs().maxCoeff();
    if (peak > 0.0) out.samples /= peak;
    return out;
}

/// Drop leading and trailing samples whose max-across-dimensions magnitude
/// stays below `threshold`. Keeps at least two samples.
inline TimeSeries trim_silence(const TimeSeries& ts, double threshold = 1e-3) {
    const Eigen::Index t = ts.length();
    Eigen::Index lo = 0, hi = t;
    auto loud = [&](Eigen::Index i) { return ts.samples.col(i).cwiseAbs().maxCoeff() >= threshold; };
    while (lo < t && !loud(lo)) ++lo;
    while (hi > lo && !loud(hi - 1)) --hi;
    if (hi - lo < 2) return ts;  // nothing but silence; keep the original
    TimeSeries out;
    out.samples = ts.samples.middleCols(lo, hi - lo);
    out.sample_rate_hz = ts.sample_rate_hz;
    out.name = ts.name;
    return out;
}

}  // namespace less
