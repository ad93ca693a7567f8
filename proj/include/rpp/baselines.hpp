#pragma once

#include <map>
#include <string>
#include <vector>

#include "rpp/types.hpp"

namespace rpp {

// Cumulative attention at the end of each unit period: counts[k-1] holds
// the count of arrivals at or before k * period.
struct CountSeries {
    std::string item_id;
    std::vector<double> counts;
};

CountSeries aggregate(const EventSequence& seq, double period);

struct BaselinePredictions {
    // item id -> predicted cumulative count at the target period
    std::map<std::string, double> predictions;
    // item id -> reason, for items that could not be scored
    std::map<std::string, std::string> excluded;
};

// Cross-item regression of ln c(target) on ln c(train_end), fitted leave-
// one-out (the target item never enters its own design). Items with a zero
// count at train_end are excluded and reported. Degenerate designs fall
// back to the intercept-only fit in log space.
BaselinePredictions fit_predict_sh(const std::vector<CountSeries>& corpus, int train_end,
                                   int target);

// Pooled least-squares AR(order) on per-period increments, leave-one-out,
// iterated forward from train_end to target; predicted increments are
// floored at zero so the cumulative reconstruction never shrinks.
BaselinePredictions fit_predict_ar(const std::vector<CountSeries>& corpus, int order,
                                   int train_end, int target);

}  // namespace rpp
