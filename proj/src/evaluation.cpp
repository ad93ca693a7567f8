#include "rpp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rpp {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double mape(const std::vector<double>& predicted, const std::vector<double>& realized,
            int* excluded) {
    if (predicted.size() != realized.size())
        throw invalid_parameter_error("mape: predicted/realized length mismatch");
    double sum = 0.0;
    int n = 0, skipped = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!(realized[i] > 0.0)) {
            ++skipped;
            continue;
        }
        sum += std::fabs(predicted[i] - realized[i]) / realized[i];
        ++n;
    }
    if (excluded) *excluded = skipped;
    return n > 0 ? sum / n : kNaN;
}

double accuracy(const std::vector<double>& predicted, const std::vector<double>& realized,
                double epsilon, int* excluded) {
    if (predicted.size() != realized.size())
        throw invalid_parameter_error("accuracy: predicted/realized length mismatch");
    if (epsilon < 0.0) throw invalid_parameter_error("accuracy: epsilon must be >= 0");
    int hits = 0, n = 0, skipped = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (!(realized[i] > 0.0)) {
            ++skipped;
            continue;
        }
        if (std::fabs(predicted[i] - realized[i]) / realized[i] <= epsilon) ++hits;
        ++n;
    }
    if (excluded) *excluded = skipped;
    return n > 0 ? static_cast<double>(hits) / n : kNaN;
}

double distribution_compare(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw invalid_parameter_error("distribution_compare: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    return d;
}

EvalReport horizon_sweep(const SweepInput& input, double epsilon) {
    const std::size_t n_items = input.items.size();
    const std::size_t n_h = input.horizons.size();
    if (input.predicted.size() != n_items || input.realized.size() != n_items)
        throw invalid_parameter_error("horizon_sweep: item row count mismatch");
    for (std::size_t i = 0; i < n_items; ++i)
        if (input.predicted[i].size() != n_h || input.realized[i].size() != n_h)
            throw invalid_parameter_error("horizon_sweep: horizon column count mismatch");

    EvalReport report;
    report.input_items = static_cast<int>(n_items);
    for (const auto& id : input.items) report.item_ape[id] = std::vector<double>(n_h, kNaN);

    for (std::size_t h = 0; h < n_h; ++h) {
        HorizonMetrics metrics;
        metrics.horizon = input.horizons[h];
        double ape_sum = 0.0;
        int hits = 0;
        std::vector<double> pred_sample, real_sample;
        for (std::size_t i = 0; i < n_items; ++i) {
            const double c = input.predicted[i][h];
            const double r = input.realized[i][h];
            if (!(r > 0.0)) {
                ++metrics.excluded;
                report.excluded_ledger.push_back(input.items[i] + "@" +
                                                 std::to_string(input.horizons[h]) +
                                                 ": realized count not positive");
                continue;
            }
            const double ape = std::fabs(c - r) / r;
            report.item_ape[input.items[i]][h] = ape;
            ape_sum += ape;
            if (ape <= epsilon) ++hits;
            pred_sample.push_back(c);
            real_sample.push_back(r);
            ++metrics.evaluated;
        }
        metrics.mape = metrics.evaluated > 0 ? ape_sum / metrics.evaluated : kNaN;
        metrics.accuracy =
            metrics.evaluated > 0 ? static_cast<double>(hits) / metrics.evaluated : kNaN;
        metrics.ks = pred_sample.empty() ? kNaN
                                         : distribution_compare(pred_sample, real_sample);
        report.per_horizon.push_back(metrics);
    }

    const std::size_t first = std::min<std::size_t>(10, n_h);
    double acc = 0.0;
    int counted = 0;
    for (std::size_t h = 0; h < first; ++h) {
        if (std::isnan(report.per_horizon[h].mape)) continue;
        acc += report.per_horizon[h].mape;
        ++counted;
    }
    report.mean_mape = counted > 0 ? acc / counted : kNaN;
    return report;
}

}  // namespace rpp
