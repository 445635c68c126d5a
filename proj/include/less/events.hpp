#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "less/spectral.hpp"

namespace less {

/// One maximal run of a single motif, frames [start, end).
struct FrameRun {
    int token = 0;
    Eigen::Index start = 0;
    Eigen::Index end = 0;
};

/// Collapsed event sequence: the transmitted form of a segmentation.
struct EventSequence {
    std::vector<int> tokens;       // no two consecutive tokens equal
    std::vector<FrameRun> frame_runs;  // contiguous partition of [0, n)
    int k = 0;
    Eigen::Index subsample = 1;    // 2^J, for mapping back to samples
};

/// Run-length collapse of the frame labels.
inline EventSequence to_event_sequence(const FrameLabels& labels, Eigen::Index subsample) {
    if (labels.labels.empty()) throw std::invalid_argument("to_event_sequence: empty labeling");
    EventSequence e;
    e.k = labels.k;
    e.subsample = subsample;
    Eigen::Index start = 0;
    for (std::size_t i = 1; i <= labels.labels.size(); ++i) {
        if (i == labels.labels.size() || labels.labels[i] != labels.labels[i - 1]) {
            e.tokens.push_back(labels.labels[i - 1]);
            e.frame_runs.push_back(
                {labels.labels[i - 1], start, static_cast<Eigen::Index>(i)});
            start = static_cast<Eigen::Index>(i);
        }
    }
    return e;
}

/// Maps each sample to the token of its frame floor(s / subsample),
/// clamping the tail to the last frame.
inline std::vector<int> annotate_signal(const EventSequence& e, Eigen::Index t) {
    if (e.frame_runs.empty()) throw std::invalid_argument("annotate_signal: empty event sequence");
    const Eigen::Index n = e.frame_runs.back().end;
    if (t < 1 || (t + e.subsample - 1) / e.subsample != n)
        throw std::invalid_argument("annotate_signal: sample count inconsistent with frame count");
    std::vector<int> tokens_by_frame(static_cast<std::size_t>(n));
    for (const auto& run : e.frame_runs)
        for (Eigen::Index f = run.start; f < run.end; ++f)
            tokens_by_frame[static_cast<std::size_t>(f)] = run.token;
    std::vector<int> out(static_cast<std::size_t>(t));
    for (Eigen::Index s = 0; s < t; ++s) {
        const Eigen::Index f = std::min(s / e.subsample, n - 1);
        out[static_cast<std::size_t>(s)] = tokens_by_frame[static_cast<std::size_t>(f)];
    }
    return out;
}

/// Minimum insertions + deletions + substitutions (unit costs) turning a
/// into b; two-row dynamic program.
inline int levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t la = a.size(), lb = b.size();
    std::vector<int> prev(lb + 1), cur(lb + 1);
    for (std::size_t j = 0; j <= lb; ++j) prev[j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= la; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= lb; ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[lb];
}

}  // namespace less
