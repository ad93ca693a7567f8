#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpp/types.hpp"

namespace rpp {

struct SimConfig {
    ItemParams params;
    int m = 30;
    double window_end = 10.0;
    std::uint64_t seed = 0;
    int replicas = 1;
    std::string id_prefix = "item";
    // Guards runaway reinforcement for extreme fitness values.
    std::size_t max_events = 1'000'000;

    void validate() const {
        params.validate();
        if (m < 1) throw invalid_parameter_error("m must be >= 1");
        if (!(window_end > 0.0)) throw invalid_parameter_error("window_end must be > 0");
        if (replicas < 0) throw invalid_parameter_error("replicas must be >= 0");
    }
};

// Distribution of per-item relaxation parameters for synthetic corpora:
// mu ~ Normal(mu_mean, mu_sd^2), sigma ~ Uniform(sigma_min, sigma_max).
struct ThetaSpec {
    double mu_mean = 1.0;
    double mu_sd = 0.5;
    double sigma_min = 0.5;
    double sigma_max = 1.5;

    void validate() const {
        if (!(mu_sd >= 0.0)) throw invalid_parameter_error("mu_sd must be >= 0");
        if (!(sigma_min > 0.0) || !(sigma_max >= sigma_min))
            throw invalid_parameter_error("need 0 < sigma_min <= sigma_max");
    }
};

struct CorpusSample {
    std::vector<EventSequence> sequences;
    std::vector<ItemParams> truth;  // aligned with sequences
};

// Exact sampler of the process by inversion: given the (i-1)th event, the
// next event lands where F(t) = F(t_prev) + Exp(1) / (fitness * (m+i-1));
// if the required mass exceeds F(T) the window ends event-free. Inversion
// uses the log-normal quantile exp(mu + sigma * Phi^-1(F)), so there is no
// time-step discretization. Replica r draws from stream derive_stream(seed, r).
std::vector<EventSequence> simulate(const SimConfig& config);

// Draws fitness ~ gamma(alpha, beta) and (mu, sigma) from the spec, then
// simulates each item on its own stream. Returns the hidden ground truth
// alongside the sequences for recovery tests.
CorpusSample simulate_corpus(const PriorParams& prior, const ThetaSpec& spec, int count,
                             const SimConfig& config);

}  // namespace rpp
