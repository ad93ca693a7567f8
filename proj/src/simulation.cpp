#include "rpp/simulation.hpp"

#include <cmath>

#include "rpp/model.hpp"
#include "rpp/rng.hpp"
#include "rpp/special_functions.hpp"

namespace rpp {

namespace {

std::vector<double> simulate_arrivals(const ItemParams& params, int m, double window_end,
                                      std::size_t max_events, Rng& rng) {
    std::vector<double> arrivals;
    if (params.fitness == 0.0) return arrivals;
    const double window_mass = relaxation_integral(window_end, params);
    double mass = 0.0;  // F at the previous event
    while (arrivals.size() < max_events) {
        const double reinforcement = params.fitness * (m + static_cast<double>(arrivals.size()));
        const double target = mass + rng.exponential() / reinforcement;
        if (target >= window_mass || target >= 1.0) break;
        double t = std::exp(params.mu + params.sigma * norm_quantile(target));
        // Quantile round-off can land a hair past T even though the mass
        // condition held; keep the sample inside the window.
        if (t > window_end) t = window_end;
        if (!arrivals.empty() && t < arrivals.back()) t = arrivals.back();
        arrivals.push_back(t);
        mass = target;
    }
    return arrivals;
}

}  // namespace

std::vector<EventSequence> simulate(const SimConfig& config) {
    config.validate();
    std::vector<EventSequence> out;
    out.reserve(config.replicas);
    for (int r = 0; r < config.replicas; ++r) {
        Rng rng(derive_stream(config.seed, static_cast<std::uint64_t>(r)));
        auto arrivals =
            simulate_arrivals(config.params, config.m, config.window_end, config.max_events, rng);
        out.emplace_back(config.id_prefix + "-" + std::to_string(r), std::move(arrivals),
                         config.window_end);
    }
    return out;
}

CorpusSample simulate_corpus(const PriorParams& prior, const ThetaSpec& spec, int count,
                             const SimConfig& config) {
    prior.validate();
    spec.validate();
    config.validate();
    if (count < 0) throw invalid_parameter_error("corpus count must be >= 0");

    CorpusSample sample;
    sample.sequences.reserve(count);
    sample.truth.reserve(count);
    for (int d = 0; d < count; ++d) {
        Rng rng(derive_stream(config.seed, static_cast<std::uint64_t>(d)));
        ItemParams truth;
        truth.fitness = rng.gamma(prior.alpha, prior.beta);
        truth.mu = spec.mu_sd > 0.0 ? rng.normal(spec.mu_mean, spec.mu_sd) : spec.mu_mean;
        truth.sigma = spec.sigma_max > spec.sigma_min
                          ? rng.uniform(spec.sigma_min, spec.sigma_max)
                          : spec.sigma_min;
        auto arrivals =
            simulate_arrivals(truth, config.m, config.window_end, config.max_events, rng);
        sample.sequences.emplace_back(config.id_prefix + "-" + std::to_string(d),
                                      std::move(arrivals), config.window_end);
        sample.truth.push_back(truth);
    }
    return sample;
}

}  // namespace rpp
