#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace less::detail {

inline Eigen::Index next_pow2(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p *= 2;
    return p;
}

inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;  // caches plans per length
    return fft;
}

/// Full-length complex spectrum of a real signal.
inline Eigen::VectorXcd fft_forward(const Eigen::VectorXd& x) {
    Eigen::VectorXcd out(x.size());
    fft_engine().fwd(out, x);
    return out;
}

/// Normalized inverse transform (complex to complex).
inline Eigen::VectorXcd fft_inverse(const Eigen::VectorXcd& spectrum) {
    Eigen::VectorXcd out(spectrum.size());
    fft_engine().inv(out, spectrum);
    return out;
}

}  // namespace less::detail
