#include "rpp/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace rpp {

namespace {

// Ordinary least squares through the normal equations with partial
// pivoting; near-zero pivots mark collinear columns, whose coefficients
// are dropped to zero rather than amplified.
std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& rows,
                                        const std::vector<double>& targets, int n_coef) {
    std::vector<std::vector<double>> ata(n_coef, std::vector<double>(n_coef, 0.0));
    std::vector<double> atb(n_coef, 0.0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int i = 0; i < n_coef; ++i) {
            atb[i] += rows[r][i] * targets[r];
            for (int j = 0; j < n_coef; ++j) ata[i][j] += rows[r][i] * rows[r][j];
        }
    }

    double scale = 0.0;
    for (int i = 0; i < n_coef; ++i) scale = std::max(scale, std::fabs(ata[i][i]));
    const double pivot_floor = std::max(scale, 1.0) * 1e-12;

    std::vector<int> perm(n_coef);
    for (int i = 0; i < n_coef; ++i) perm[i] = i;
    std::vector<double> coef(n_coef, 0.0);

    for (int col = 0; col < n_coef; ++col) {
        int best = col;
        for (int r = col + 1; r < n_coef; ++r)
            if (std::fabs(ata[r][col]) > std::fabs(ata[best][col])) best = r;
        std::swap(ata[col], ata[best]);
        std::swap(atb[col], atb[best]);
        if (std::fabs(ata[col][col]) < pivot_floor) {
            ata[col][col] = 0.0;
            continue;
        }
        for (int r = 0; r < n_coef; ++r) {
            if (r == col || ata[r][col] == 0.0) continue;
            const double f = ata[r][col] / ata[col][col];
            for (int c = 0; c < n_coef; ++c) ata[r][c] -= f * ata[col][c];
            atb[r] -= f * atb[col];
        }
    }
    for (int i = 0; i < n_coef; ++i)
        if (ata[i][i] != 0.0) coef[i] = atb[i] / ata[i][i];
    return coef;
}

}  // namespace

CountSeries aggregate(const EventSequence& seq, double period) {
    if (!(period > 0.0)) throw invalid_parameter_error("aggregation period must be > 0");
    const int n_periods = static_cast<int>(std::floor(seq.window_end() / period + 1e-9));
    CountSeries series;
    series.item_id = seq.item_id();
    series.counts.resize(n_periods, 0.0);
    for (int k = 1; k <= n_periods; ++k) {
        const double edge = k * period;
        const auto& ts = seq.arrivals();
        series.counts[k - 1] =
            static_cast<double>(std::upper_bound(ts.begin(), ts.end(), edge) - ts.begin());
    }
    return series;
}

BaselinePredictions fit_predict_sh(const std::vector<CountSeries>& corpus, int train_end,
                                   int target) {
    if (train_end < 1 || target <= train_end)
        throw invalid_parameter_error("need 1 <= train_end < target");
    BaselinePredictions out;

    struct Point {
        double x, y;
    };
    std::vector<Point> pool;  // all usable (train, target) pairs
    std::vector<int> usable;  // index into corpus for each pool entry
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& c = corpus[d].counts;
        if (static_cast<int>(c.size()) < target) continue;
        if (!(c[train_end - 1] > 0.0) || !(c[target - 1] > 0.0)) continue;
        pool.push_back({std::log(c[train_end - 1]), std::log(c[target - 1])});
        usable.push_back(static_cast<int>(d));
    }

    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& series = corpus[d];
        if (static_cast<int>(series.counts.size()) < train_end) {
            out.excluded[series.item_id] = "series shorter than train_end";
            continue;
        }
        const double c_train = series.counts[train_end - 1];
        if (!(c_train > 0.0)) {
            out.excluded[series.item_id] = "zero count at train_end";
            continue;
        }

        // Leave-one-out: drop this item's own pair from the design.
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (usable[j] == static_cast<int>(d)) continue;
            sx += pool[j].x;
            sy += pool[j].y;
            sxx += pool[j].x * pool[j].x;
            sxy += pool[j].x * pool[j].y;
            ++n;
        }
        if (n == 0) {
            out.excluded[series.item_id] = "no usable neighbors";
            continue;
        }
        const double var_x = sxx - sx * sx / n;
        double log_pred;
        if (n < 2 || var_x <= 1e-12 * std::max(1.0, sxx)) {
            log_pred = sy / n;  // intercept-only fallback
        } else {
            const double slope = (sxy - sx * sy / n) / var_x;
            const double intercept = (sy - slope * sx) / n;
            log_pred = intercept + slope * std::log(c_train);
        }
        out.predictions[series.item_id] = std::max(std::exp(log_pred), c_train);
    }
    return out;
}

BaselinePredictions fit_predict_ar(const std::vector<CountSeries>& corpus, int order,
                                   int train_end, int target) {
    if (order < 1) throw invalid_parameter_error("AR order must be >= 1");
    if (train_end < order || target <= train_end)
        throw invalid_parameter_error("need train_end >= order and target > train_end");
    BaselinePredictions out;

    auto increments = [](const std::vector<double>& counts, int upto) {
        std::vector<double> inc(upto);
        for (int t = 0; t < upto; ++t) inc[t] = counts[t] - (t > 0 ? counts[t - 1] : 0.0);
        return inc;
    };

    const int n_coef = order + 1;  // intercept + lags
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& series = corpus[d];
        if (static_cast<int>(series.counts.size()) < train_end) {
            out.excluded[series.item_id] = "series shorter than train_end";
            continue;
        }

        std::vector<std::vector<double>> rows;
        std::vector<double> targets;
        for (std::size_t j = 0; j < corpus.size(); ++j) {
            if (j == d) continue;  // leave-one-out
            const auto& c = corpus[j].counts;
            if (static_cast<int>(c.size()) < train_end) continue;
            const auto inc = increments(c, train_end);
            for (int t = order; t < train_end; ++t) {
                std::vector<double> row(n_coef, 1.0);
                for (int l = 1; l <= order; ++l) row[l] = inc[t - l];
                rows.push_back(std::move(row));
                targets.push_back(inc[t]);
            }
        }
        if (rows.empty()) {
            out.excluded[series.item_id] = "no usable neighbors";
            continue;
        }
        const auto coef = solve_least_squares(rows, targets, n_coef);

        auto inc = increments(series.counts, train_end);
        double cumulative = series.counts[train_end - 1];
        for (int t = train_end; t < target; ++t) {
            double next = coef[0];
            for (int l = 1; l <= order; ++l) next += coef[l] * inc[t - l];
            next = std::max(next, 0.0);
            inc.push_back(next);
            cumulative += next;
        }
        out.predictions[series.item_id] = cumulative;
    }
    return out;
}

}  // namespace rpp
