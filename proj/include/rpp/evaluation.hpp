#pragma once

#include <map>
#include <string>
#include <vector>

#include "rpp/types.hpp"

namespace rpp {

// Mean absolute percentage error (1/N) sum |c - r| / r over pairs with
// r > 0; pairs with r <= 0 are skipped and counted through `excluded`.
// Returns NaN when no pair is scorable.
double mape(const std::vector<double>& predicted, const std::vector<double>& realized,
            int* excluded = nullptr);

// Fraction of pairs with |c - r| / r <= epsilon, same exclusion rule.
double accuracy(const std::vector<double>& predicted, const std::vector<double>& realized,
                double epsilon, int* excluded = nullptr);

// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| in [0, 1].
double distribution_compare(std::vector<double> a, std::vector<double> b);

struct HorizonMetrics {
    double horizon = 0.0;
    double mape = 0.0;
    double accuracy = 0.0;
    double ks = 0.0;
    int evaluated = 0;
    int excluded = 0;
};

struct SweepInput {
    std::vector<double> horizons;
    std::vector<std::string> items;
    // item-major, aligned with horizons
    std::vector<std::vector<double>> predicted;
    std::vector<std::vector<double>> realized;
};

struct EvalReport {
    std::vector<HorizonMetrics> per_horizon;
    // <MAPE>: per-horizon MAPEs averaged over the first ten horizons (or
    // all of them when fewer are present).
    double mean_mape = 0.0;
    // item -> absolute percentage error per horizon; NaN where excluded
    std::map<std::string, std::vector<double>> item_ape;
    std::vector<std::string> excluded_ledger;
    int input_items = 0;
};

EvalReport horizon_sweep(const SweepInput& input, double epsilon);

}  // namespace rpp
