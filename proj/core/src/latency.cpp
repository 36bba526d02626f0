#include "simt/latency.hpp"

#include <algorithm>

#include "simt/errors.hpp"

namespace simt {

LatencyResult average_lagging_sec(const SourceTimeline& timeline,
                                  const TargetEmissions& emissions) {
    if (timeline.empty()) throw DataError("empty source timeline");
    if (emissions.empty()) throw DataError("empty target emissions");

    const int source_len = static_cast<int>(timeline.size());
    const int target_len = static_cast<int>(emissions.size());

    LatencyResult result;
    result.gamma = static_cast<double>(target_len) / static_cast<double>(source_len);

    // g(t): ends are monotone, so count by upper_bound over the end array.
    std::vector<double> ends;
    ends.reserve(timeline.size());
    for (const auto& w : timeline.words()) ends.push_back(w.end);

    std::vector<int> coverage(target_len);
    for (int t = 1; t <= target_len; ++t) {
        const double tau = emissions.onsets[static_cast<std::size_t>(t - 1)];
        coverage[static_cast<std::size_t>(t - 1)] = static_cast<int>(
            std::upper_bound(ends.begin(), ends.end(), tau) - ends.begin());
    }

    int tau_star = target_len;
    for (int t = 1; t <= target_len; ++t) {
        if (coverage[static_cast<std::size_t>(t - 1)] == source_len) {
            tau_star = t;
            break;
        }
    }
    result.tau_star = tau_star;

    double sum = 0.0;
    for (int t = 1; t <= tau_star; ++t) {
        const int g = coverage[static_cast<std::size_t>(t - 1)];
        result.coverage_steps.push_back(g);
        const double policy_index =
            std::max(1.0, std::min(static_cast<double>(source_len), static_cast<double>(g)));
        const double diagonal_index =
            std::max(1.0, std::min(static_cast<double>(source_len),
                                   static_cast<double>(t - 1) / result.gamma));
        sum += time_at_index(policy_index, timeline) - time_at_index(diagonal_index, timeline);
    }
    result.al_seconds = sum / static_cast<double>(tau_star);
    return result;
}

double mean_al(const std::vector<LatencyResult>& results) {
    if (results.empty()) throw DataError("no latency results to aggregate");
    double sum = 0.0;
    for (const auto& r : results) sum += r.al_seconds;
    return sum / static_cast<double>(results.size());
}

json latency_to_json(const std::string& id, const LatencyResult& result) {
    return {{"id", id},
            {"al_sec", result.al_seconds},
            {"tau_star", result.tau_star},
            {"gamma", result.gamma}};
}

} // namespace simt
