#pragma once

#include <string>
#include <vector>

#include "simt/timeline.hpp"

namespace simt {

// Time-based Average Lagging of one sentence.
//
// g(t)  = number of source words whose end times are <= the onset of the
//         t-th target unit
// gamma = |Y| / |X|
// tau*  = first t with g(t) = |X|, falling back to |Y| when coverage is
//         never completed
// AL    = (1/tau*) * sum_{t=1..tau*} [ time(g(t)) - time((t-1)/gamma) ]
// where time() interpolates fractional source indexes over word end times,
// with both indexes clamped into [1, |X|].
struct LatencyResult {
    double al_seconds = 0.0;
    int tau_star = 0;            // 1-based step index
    double gamma = 0.0;          // |Y| / |X|
    std::vector<int> coverage_steps; // g(t) for t in [1, tau*], pre-clamp
};

LatencyResult average_lagging_sec(const SourceTimeline& timeline,
                                  const TargetEmissions& emissions);

// Unweighted mean over sentences; the declared corpus-level aggregation.
double mean_al(const std::vector<LatencyResult>& results);

json latency_to_json(const std::string& id, const LatencyResult& result);

} // namespace simt
