#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rpp {

// Error taxonomy. Contract violations throw; states the caller is expected
// to handle in the normal flow (zero-fitness likelihood, divergent moments)
// are reported as values instead.
struct invalid_parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct degenerate_exposure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct degenerate_fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ill_posed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct horizon_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-item model parameters: fitness is the rate multiplier per unit of
// relaxation mass, (mu, sigma) locate and scale the log-normal relaxation.
struct ItemParams {
    double fitness = 1.0;
    double mu = 0.0;
    double sigma = 1.0;

    void validate() const {
        if (!(fitness >= 0.0) || !std::isfinite(fitness))
            throw invalid_parameter_error("fitness must be finite and >= 0");
        if (!std::isfinite(mu))
            throw invalid_parameter_error("mu must be finite");
        if (!(sigma > 0.0) || !std::isfinite(sigma))
            throw invalid_parameter_error("sigma must be finite and > 0");
    }
};

// Gamma prior over fitness, rate parameterization: mean alpha/beta,
// variance alpha/beta^2.
struct PriorParams {
    double alpha = 1.0;
    double beta = 1.0;

    double mean() const { return alpha / beta; }
    double variance() const { return alpha / (beta * beta); }

    void validate() const {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw invalid_parameter_error("prior alpha must be finite and > 0");
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw invalid_parameter_error("prior beta must be finite and > 0");
    }
};

// Shared model/optimizer settings. m is the effective prior attention
// count entering the reinforcement factor m + i - 1.
struct ModelConfig {
    int m = 30;

    // Arrival times below this floor are clamped before taking logs; the
    // log-normal relaxation is undefined at t = 0 but real data may carry
    // same-day events.
    double time_floor = 1e-3;

    // Optimizer settings for per-item and corpus fits.
    double gradient_tolerance = 1e-6;
    double corpus_ll_rel_tolerance = 1e-8;
    int max_outer_iterations = 200;
    int max_inner_iterations = 500;
    double sigma_floor = 1e-3;

    // Default horizon grid for forecast sweeps, in time units past the
    // observation window.
    std::vector<double> horizon_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    void validate() const {
        if (m < 1) throw invalid_parameter_error("m must be >= 1");
        if (!(time_floor > 0.0)) throw invalid_parameter_error("time_floor must be > 0");
        if (!(gradient_tolerance > 0.0) || !(corpus_ll_rel_tolerance > 0.0))
            throw invalid_parameter_error("tolerances must be > 0");
        if (max_outer_iterations < 1 || max_inner_iterations < 1)
            throw invalid_parameter_error("iteration caps must be >= 1");
        if (!(sigma_floor > 0.0)) throw invalid_parameter_error("sigma_floor must be > 0");
    }
};

// One item's attention arrivals within an observation window [0, T].
// Immutable after construction; construction validates the invariants.
class EventSequence {
  public:
    EventSequence(std::string item_id, std::vector<double> arrivals, double window_end)
        : item_id_(std::move(item_id)),
          arrivals_(std::move(arrivals)),
          window_end_(window_end) {
        if (!(window_end_ > 0.0) || !std::isfinite(window_end_))
            throw invalid_parameter_error("window_end must be finite and > 0: item " + item_id_);
        double prev = 0.0;
        for (double t : arrivals_) {
            if (!std::isfinite(t) || t < 0.0)
                throw invalid_parameter_error("arrival times must be finite and >= 0: item " + item_id_);
            if (t < prev)
                throw invalid_parameter_error("arrival times must be sorted non-decreasing: item " + item_id_);
            if (t > window_end_)
                throw invalid_parameter_error("arrival time exceeds window_end: item " + item_id_);
            prev = t;
        }
    }

    const std::string& item_id() const { return item_id_; }
    const std::vector<double>& arrivals() const { return arrivals_; }
    double window_end() const { return window_end_; }
    int count() const { return static_cast<int>(arrivals_.size()); }

  private:
    std::string item_id_;
    std::vector<double> arrivals_;
    double window_end_;
};

}  // namespace rpp
