#pragma once

// Independent oracles, written straight from the definitions and kept free
// of the library's implementation paths.

#include <algorithm>
#include <cmath>
#include <vector>

namespace simt_test {

// Brute-force transcription of the time-based average-lagging display
// formula: counting loop for g, linear scan for tau*, inline interpolation.
inline double al_oracle(const std::vector<double>& ends, const std::vector<double>& onsets) {
    const int source_len = static_cast<int>(ends.size());
    const int target_len = static_cast<int>(onsets.size());
    const double gamma = static_cast<double>(target_len) / static_cast<double>(source_len);

    auto coverage = [&](int t) {
        int count = 0;
        for (double end : ends) {
            if (end <= onsets[static_cast<std::size_t>(t - 1)]) ++count;
        }
        return count;
    };

    int tau_star = target_len;
    for (int t = 1; t <= target_len; ++t) {
        if (coverage(t) == source_len) {
            tau_star = t;
            break;
        }
    }

    auto interpolate = [&](double x) {
        if (x <= 1.0) return ends.front();
        if (x >= static_cast<double>(source_len)) return ends.back();
        const int i = static_cast<int>(std::floor(x));
        const double w = x - static_cast<double>(i);
        return (1.0 - w) * ends[static_cast<std::size_t>(i - 1)] +
               w * ends[static_cast<std::size_t>(i)];
    };

    double sum = 0.0;
    for (int t = 1; t <= tau_star; ++t) {
        const double policy = std::max(
            1.0, std::min(static_cast<double>(source_len), static_cast<double>(coverage(t))));
        const double diagonal =
            std::max(1.0, std::min(static_cast<double>(source_len),
                                   static_cast<double>(t - 1) / gamma));
        sum += interpolate(policy) - interpolate(diagonal);
    }
    return sum / static_cast<double>(tau_star);
}

// Plain token edit distance, for the shift-free TER cases.
template <typename Token>
int levenshtein_oracle(const std::vector<Token>& a, const std::vector<Token>& b) {
    std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1, 0));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        }
    }
    return d[a.size()][b.size()];
}

} // namespace simt_test
