#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "less/time_series.hpp"

namespace less {

/// One building block of a synthetic signal.
struct SegmentSpec {
    enum class Kind { sine, chirp, noise, silence };
    Kind kind = Kind::silence;
    double duration_s = 0.0;
    double freq_hz = 0.0;            // sine
    double f0_hz = 0.0, f1_hz = 0.0; // chirp endpoints
    double sigma = 1.0;              // noise std
    double amplitude = 1.0;
};

inline SegmentSpec sine_segment(double freq_hz, double duration_s, double amplitude = 1.0) {
    return {SegmentSpec::Kind::sine, duration_s, freq_hz, 0.0, 0.0, 1.0, amplitude};
}

inline SegmentSpec chirp_segment(double f0_hz, double f1_hz, double duration_s,
                                 double amplitude = 1.0) {
    return {SegmentSpec::Kind::chirp, duration_s, 0.0, f0_hz, f1_hz, 1.0, amplitude};
}

inline SegmentSpec noise_segment(double sigma, double duration_s) {
    return {SegmentSpec::Kind::noise, duration_s, 0.0, 0.0, 0.0, sigma, 1.0};
}

inline SegmentSpec silence_segment(double duration_s) {
    return {SegmentSpec::Kind::silence, duration_s};
}

/// Concatenates the segments and adds an optional linear trend
/// (trend_slope in amplitude units per second). Deterministic given seed.
inline TimeSeries synth_composite(const std::vector<SegmentSpec>& segments, double sample_rate_hz,
                                  double trend_slope = 0.0, std::uint64_t seed = 42) {
    if (segments.empty()) throw std::invalid_argument("synth_composite: empty segment spec");
    if (sample_rate_hz <= 0.0) throw std::invalid_argument("synth_composite: sample rate must be positive");
    for (const auto& s : segments)
        if (s.duration_s <= 0.0)
            throw std::invalid_argument("synth_composite: segment durations must be positive");

    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> out;
    for (const auto& s : segments) {
        const auto n = static_cast<Eigen::Index>(std::llround(s.duration_s * sample_rate_hz));
        for (Eigen::Index i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / sample_rate_hz;
            double v = 0.0;
            switch (s.kind) {
                case SegmentSpec::Kind::sine:
                    v = s.amplitude * std::sin(two_pi * s.freq_hz * t);
                    break;
                case SegmentSpec::Kind::chirp: {
                    // linear sweep f0 -> f1: phase = 2*pi*(f0*t + (f1-f0)*t^2/(2*T))
                    const double rate = (s.f1_hz - s.f0_hz) / s.duration_s;
                    v = s.amplitude * std::sin(two_pi * (s.f0_hz * t + 0.5 * rate * t * t));
                    break;
                }
                case SegmentSpec::Kind::noise:
                    v = s.sigma * gauss(rng);
                    break;
                case SegmentSpec::Kind::silence:
                    break;
            }
            out.push_back(v);
        }
    }
    if (out.size() < 2) throw std::invalid_argument("synth_composite: spec too short at this sample rate");

    TimeSeries ts;
    ts.samples.resize(1, static_cast<Eigen::Index>(out.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        ts.samples(0, static_cast<Eigen::Index>(i)) =
            out[i] + trend_slope * (static_cast<double>(i) / sample_rate_hz);
    ts.sample_rate_hz = sample_rate_hz;
    ts.name = "composite";
    validate(ts);
    return ts;
}

namespace detail {

/// Gaussian bump of the cycle phase, wrapped so both period ends see it.
inline double wrapped_gauss(double tau, double center, double sigma) {
    double d = std::abs(tau - center);
    d = std::min(d, 1.0 - d);
    return std::exp(-d * d / (2.0 * sigma * sigma));
}

}  // namespace detail

/// Periodic cardiac-like cycle: P bump, sharp QRS spike, flat ST stretch,
/// T bump. The QRS center is snapped to the nearest sample so every beat
/// attains the same peak height regardless of the rate/beat ratio.
inline TimeSeries synth_ecg(int n_beats, double beat_rate_hz, double sample_rate_hz) {
    if (n_beats < 1) throw std::invalid_argument("synth_ecg: need at least one beat");
    if (beat_rate_hz <= 0.0) throw std::invalid_argument("synth_ecg: beat rate must be positive");
    if (sample_rate_hz < 20.0 * beat_rate_hz)
        throw std::invalid_argument("synth_ecg: sample rate below 20x beat rate cannot resolve the QRS spike");

    const double spb = sample_rate_hz / beat_rate_hz;  // samples per beat
    const auto t = static_cast<Eigen::Index>(std::llround(n_beats * spb));
    constexpr double p_center = 0.20, p_sigma = 0.03, p_amp = 0.2;
    constexpr double qrs_center = 0.38, qrs_sigma = 0.02;
    constexpr double t_center = 0.62, t_sigma = 0.055, t_amp = 0.35;

    TimeSeries ts;
    ts.samples.resize(1, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        const double tau = std::fmod(static_cast<double>(i) / spb, 1.0);
        double v = p_amp * detail::wrapped_gauss(tau, p_center, p_sigma) +
                   t_amp * detail::wrapped_gauss(tau, t_center, t_sigma);
        const auto near = static_cast<long long>(std::llround(static_cast<double>(i) / spb - qrs_center));
        for (long long b = near - 1; b <= near + 1; ++b) {
            const double center = std::round((static_cast<double>(b) + qrs_center) * spb);
            const double d = (static_cast<double>(i) - center) / spb;
            v += std::exp(-d * d / (2.0 * qrs_sigma * qrs_sigma));
        }
        ts.samples(0, i) = v;
    }
    ts.sample_rate_hz = sample_rate_hz;
    ts.name = "ecg";
    validate(ts);
    return ts;
}

/// Adds i.i.d. zero-mean Gaussian noise with standard deviation sigma.
inline TimeSeries add_gaussian_noise(const TimeSeries& ts, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("add_gaussian_noise: sigma must be non-negative");
    TimeSeries out = ts;
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (Eigen::Index i = 0; i < out.length(); ++i)
        for (Eigen::Index d = 0; d < out.dims(); ++d)
            out.samples(d, i) += gauss(rng);
    validate(out);
    return out;
}

}  // namespace less
