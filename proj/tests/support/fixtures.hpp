#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rpp/rng.hpp"
#include "rpp/types.hpp"

namespace fixtures {

// Random sorted arrivals bounded away from zero so the clamp floor never
// engages and oracles can work with the raw times.
inline rpp::EventSequence random_sequence(rpp::Rng& rng, int n, double window_end,
                                          const std::string& id = "item",
                                          double t_min = 0.05) {
    std::vector<double> ts(n);
    for (auto& t : ts) t = rng.uniform(t_min, window_end);
    std::sort(ts.begin(), ts.end());
    return {id, std::move(ts), window_end};
}

inline rpp::ItemParams random_params(rpp::Rng& rng) {
    return {rng.uniform(0.2, 3.0), rng.uniform(-0.5, 1.5), rng.uniform(0.3, 1.8)};
}

}  // namespace fixtures
