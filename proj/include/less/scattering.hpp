#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "less/fft.hpp"
#include "less/time_series.hpp"

namespace less {

struct ScatterParams {
    int J = 6;             // dyadic scale; low-pass averaging and subsampling by 2^J
    int Q = 2;             // first-order wavelets per octave
    int num_low_freq = 16; // lowest-frequency filters retained (clamped to J*Q)
    int max_order = 2;     // scatter network depth, 1 or 2
};

inline void validate(const ScatterParams& p) {
    if (p.J < 1) throw std::invalid_argument("ScatterParams: J must be >= 1");
    if (p.Q < 1) throw std::invalid_argument("ScatterParams: Q must be >= 1");
    if (p.num_low_freq < 1) throw std::invalid_argument("ScatterParams: num_low_freq must be >= 1");
    if (p.max_order != 1 && p.max_order != 2)
        throw std::invalid_argument("ScatterParams: max_order must be 1 or 2");
}

/// Band-pass filter in the frequency domain with its ladder position.
struct Wavelet {
    Eigen::VectorXd hat;  // sampled transfer function over the padded grid
    double lambda = 0.0;  // center frequency, rad/sample
    double scale = 1.0;   // dyadic dilation 2^(j/Q) relative to the mother
};

struct FilterBank {
    std::vector<Wavelet> psi;  // descending center frequency
    Eigen::VectorXd phi;       // Gaussian low-pass at scale 2^J
    Eigen::Index signal_len = 0;  // padded FFT length
    int J = 0, Q = 0;
};

/// Mother Morlet center frequency as a fraction of the discrete band.
inline constexpr double kMotherCenter = 0.85 * std::numbers::pi;

/// Morlet band-pass ladder lambda_j = xi * 2^(-j/Q), j = 0 .. J*Q-1, each
/// zero-mean corrected, plus a Gaussian low-pass of bandwidth pi/2^J. The
/// band-pass gains are rescaled once so the Littlewood-Paley sum stays
/// below the 1.05 frame bound.
inline FilterBank build_filter_bank(const ScatterParams& params, Eigen::Index t) {
    validate(params);
    const Eigen::Index support = Eigen::Index(1) << (params.J + 2);
    if (t < support)
        throw std::invalid_argument("build_filter_bank: signal too short for J (need at least 2^(J+2) samples)");

    const Eigen::Index pad = Eigen::Index(1) << params.J;
    const Eigen::Index N = detail::next_pow2(t + 2 * pad);

    // signed frequency grid of the length-N DFT
    Eigen::VectorXd omega(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        double w = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(N);
        omega[i] = w > std::numbers::pi ? w - 2.0 * std::numbers::pi : w;
    }

    // constant-Q bandwidth: adjacent filters cross at their half-power points
    const double q_ratio = std::pow(2.0, -1.0 / params.Q);
    const double bw = (1.0 - q_ratio) / (1.0 + q_ratio) / std::sqrt(std::numbers::ln2);

    FilterBank bank;
    bank.J = params.J;
    bank.Q = params.Q;
    bank.signal_len = N;
    const int total = params.J * params.Q;
    bank.psi.reserve(total);
    for (int j = 0; j < total; ++j) {
        Wavelet w;
        w.lambda = kMotherCenter * std::pow(2.0, -double(j) / params.Q);
        w.scale = std::pow(2.0, double(j) / params.Q);
        const double sig = w.lambda * bw;
        const double kappa = std::exp(-w.lambda * w.lambda / (2.0 * sig * sig));
        w.hat = ((-(omega.array() - w.lambda).square() / (2.0 * sig * sig)).exp() -
                 kappa * (-omega.array().square() / (2.0 * sig * sig)).exp())
                    .matrix();
        bank.psi.push_back(std::move(w));
    }

    const double sig_phi = std::numbers::pi / static_cast<double>(pad);
    bank.phi = (-omega.array().square() / (2.0 * sig_phi * sig_phi)).exp().matrix();

    Eigen::ArrayXd lp_sum = Eigen::ArrayXd::Zero(N);
    for (const auto& w : bank.psi) lp_sum += w.hat.array().square();
    double gain2 = 1.0;
    for (Eigen::Index i = 0; i < N; ++i)
        if (lp_sum[i] > 1e-9)
            gain2 = std::min(gain2, (1.05 - bank.phi[i] * bank.phi[i]) / lp_sum[i]);
    const double gain = std::sqrt(gain2);
    for (auto& w : bank.psi) w.hat *= gain;
    return bank;
}

/// Min/max of |phi_hat|^2 + sum |psi_hat|^2 over grid frequencies in
/// [0, mother center]; a healthy bank stays within [0.5, 1.05].
inline std::pair<double, double> littlewood_paley_range(const FilterBank& bank) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < bank.signal_len; ++i) {
        const double w =
            2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(bank.signal_len);
        if (w > kMotherCenter) continue;
        double s = bank.phi[i] * bank.phi[i];
        for (const auto& psi : bank.psi) s += psi.hat[i] * psi.hat[i];
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return {lo, hi};
}

/// Row tag: scatter order and the wavelet path that produced it.
struct ChannelIndex {
    int order = 0;          // 0, 1, or 2
    double lambda1 = 0.0;   // first-order center frequency (orders 1 and 2)
    double lambda2 = 0.0;   // second-order center frequency (order 2 only)
    int source_dim = 0;     // input dimension of this row
};

struct ScatterRepresentation {
    Eigen::MatrixXd coeffs;  // rows = channels, cols = n time frames
    Eigen::Index n = 0;      // frame count, ceil(t / 2^J)
    Eigen::Index subsample = 1;  // 2^J
    std::vector<ChannelIndex> channel_index;  // one entry per row
};

namespace detail {

/// Mirror index without edge repeat (period 2t-2).
inline Eigen::Index reflect_idx(Eigen::Index j, Eigen::Index t) {
    if (t == 1) return 0;
    const Eigen::Index period = 2 * t - 2;
    Eigen::Index m = std::abs(j) % period;
    return m < t ? m : period - m;
}

inline Eigen::VectorXcd apply_filter(const Eigen::VectorXcd& spectrum, const Eigen::VectorXd& hat) {
    return spectrum.cwiseProduct(hat.cast<std::complex<double>>());
}

/// Low-pass, back to time, keep the real part at the subsampled frames.
inline Eigen::VectorXd lowpass_frames(const Eigen::VectorXcd& spectrum, const FilterBank& bank,
                                      Eigen::Index lo, Eigen::Index n, Eigen::Index sub) {
    const Eigen::VectorXcd smooth = fft_inverse(apply_filter(spectrum, bank.phi));
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = smooth[lo + i * sub].real();
    return out;
}

}  // namespace detail

/// Depth-m scattering of one channel: order 0 is x*phi; order 1 is
/// |x*psi_l1|*phi; order 2 is ||x*psi_l1|*psi_l2|*phi for l2 < l1, all
/// restricted to the num_low_freq lowest-frequency wavelets and subsampled
/// by 2^J. Rows are emitted depth-first along descending-frequency paths.
inline ScatterRepresentation scatter_1d(const Eigen::VectorXd& x, const FilterBank& bank,
                                        const ScatterParams& params) {
    validate(params);
    if (!x.allFinite()) throw std::invalid_argument("scatter_1d: input must be finite");
    const Eigen::Index t = x.size();
    const Eigen::Index sub = Eigen::Index(1) << params.J;
    if (t < (Eigen::Index(1) << (params.J + 2)))
        throw std::invalid_argument("scatter_1d: signal too short for J");
    if (t + 2 * sub > bank.signal_len || bank.J != params.J || bank.Q != params.Q)
        throw std::invalid_argument("scatter_1d: filter bank does not match signal length and params");

    const Eigen::Index N = bank.signal_len;
    const Eigen::Index lo = (N - t) / 2;
    Eigen::VectorXd padded(N);
    for (Eigen::Index i = 0; i < N; ++i) padded[i] = x[detail::reflect_idx(i - lo, t)];

    const Eigen::VectorXcd spectrum = detail::fft_forward(padded);
    const Eigen::Index n = (t + sub - 1) / sub;

    const int total = static_cast<int>(bank.psi.size());
    const int p = std::min(params.num_low_freq, total);
    const int first = total - p;  // retained block: the p lowest frequencies

    std::vector<Eigen::VectorXd> rows;
    std::vector<ChannelIndex> tags;
    rows.push_back(detail::lowpass_frames(spectrum, bank, lo, n, sub));
    tags.push_back({0, 0.0, 0.0, 0});

    for (int a = first; a < total; ++a) {
        const Eigen::VectorXcd u1 =
            detail::fft_inverse(detail::apply_filter(spectrum, bank.psi[a].hat));
        const Eigen::VectorXcd v1 = detail::fft_forward(u1.cwiseAbs());
        rows.push_back(detail::lowpass_frames(v1, bank, lo, n, sub));
        tags.push_back({1, bank.psi[a].lambda, 0.0, 0});
        if (params.max_order < 2) continue;
        for (int b = a + 1; b < total; ++b) {  // strictly lower frequency
            const Eigen::VectorXcd u2 =
                detail::fft_inverse(detail::apply_filter(v1, bank.psi[b].hat));
            const Eigen::VectorXcd v2 = detail::fft_forward(u2.cwiseAbs());
            rows.push_back(detail::lowpass_frames(v2, bank, lo, n, sub));
            tags.push_back({2, bank.psi[a].lambda, bank.psi[b].lambda, 0});
        }
    }

    ScatterRepresentation rep;
    rep.n = n;
    rep.subsample = sub;
    rep.coeffs.resize(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        rep.coeffs.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    rep.channel_index = std::move(tags);
    return rep;
}

/// Per-dimension scattering with one shared bank; row blocks are stacked in
/// dimension order and tagged with their source dimension.
inline ScatterRepresentation scatter_multivariate(const TimeSeries& ts, const ScatterParams& params) {
    validate(ts);
    const FilterBank bank = build_filter_bank(params, ts.length());
    ScatterRepresentation rep;
    for (Eigen::Index d = 0; d < ts.dims(); ++d) {
        ScatterRepresentation block = scatter_1d(ts.samples.row(d).transpose(), bank, params);
        for (auto& tag : block.channel_index) tag.source_dim = static_cast<int>(d);
        if (d == 0) {
            rep = std::move(block);
        } else {
            const Eigen::Index base = rep.coeffs.rows();
            rep.coeffs.conservativeResize(base + block.coeffs.rows(), Eigen::NoChange);
            rep.coeffs.bottomRows(block.coeffs.rows()) = block.coeffs;
            rep.channel_index.insert(rep.channel_index.end(), block.channel_index.begin(),
                                     block.channel_index.end());
        }
    }
    return rep;
}

enum class NormalizeMode { per_channel_max, log1p_standardize, none };

/// Row-wise normalization. per_channel_max divides each row by its max
/// (all-zero rows stay zero); log1p_standardize applies log(1+v) then
/// zero-mean unit-variance per row (constant rows become zero).
inline ScatterRepresentation normalize_rep(const ScatterRepresentation& z, NormalizeMode mode) {
    ScatterRepresentation out = z;
    if (mode == NormalizeMode::none) return out;
    for (Eigen::Index r = 0; r < out.coeffs.rows(); ++r) {
        auto row = out.coeffs.row(r);
        if (mode == NormalizeMode::per_channel_max) {
            const double m = row.maxCoeff();
            if (m > 0.0) row /= m;
        } else {
            Eigen::ArrayXd v = row.transpose().array().log1p();
            const double mean = v.mean();
            const double sd = std::sqrt((v - mean).square().mean());
            if (sd > 0.0)
                row = (((v - mean) / sd).matrix().transpose()).eval();
            else
                row.setZero();
        }
    }
    return out;
}

}  // namespace less
