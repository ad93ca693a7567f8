#include "rpp/prediction.hpp"

#include <cmath>
#include <limits>

#include "rpp/model.hpp"

namespace rpp {

namespace {

double mass_gap(const EventSequence& seq, const ItemParams& params, double t) {
    if (t < seq.window_end())
        throw horizon_error("prediction horizon precedes the observation window end");
    return relaxation_integral(t, params) - relaxation_integral(seq.window_end(), params);
}

Forecast bayes_impl(const EventSequence& seq, const ItemParams& theta,
                    const LikelihoodTerms& terms, const PriorParams& prior,
                    const ModelConfig& config, double t) {
    config.validate();
    prior.validate();
    const double y = mass_gap(seq, theta, t);
    const double b = prior.beta + terms.exposure;
    const double a = prior.alpha + seq.count();
    const double mn = config.m + seq.count();

    Forecast f;
    f.horizon = t;
    f.regime = Regime::bayes;
    if (b <= y) {
        // The posterior-expected exponential does not exist.
        f.mean_divergent = true;
        f.point = std::numeric_limits<double>::infinity();
        f.variance_divergent = true;
        return f;
    }
    const double log_base = std::log(b) - std::log(b - y);
    f.point = mn * std::exp(a * log_base) - config.m;
    if (b > 2.0 * y) {
        const double log_base2 = std::log(b) - std::log(b - 2.0 * y);
        f.variance = mn * mn * (std::exp(a * log_base2) - std::exp(2.0 * a * log_base));
        f.has_variance = true;
    } else {
        f.variance_divergent = true;
    }
    return f;
}

}  // namespace

Forecast predict_mle(const EventSequence& seq, const ItemParams& params,
                     const ModelConfig& config, double t) {
    config.validate();
    const double y = mass_gap(seq, params, t);
    Forecast f;
    f.horizon = t;
    f.regime = Regime::mle;
    f.point = (config.m + seq.count()) * std::exp(params.fitness * y) - config.m;
    return f;
}

GammaPosterior posterior(const EventSequence& seq, const ItemParams& theta,
                         const PriorParams& prior, const ModelConfig& config) {
    prior.validate();
    const auto terms = log_likelihood(seq, theta, config);
    return {prior.alpha + seq.count(), prior.beta + terms.exposure};
}

Forecast predict_bayes(const EventSequence& seq, const ItemParams& theta,
                       const LikelihoodTerms& terms, const PriorParams& prior,
                       const ModelConfig& config, double t) {
    return bayes_impl(seq, theta, terms, prior, config, t);
}

Forecast predict_variance(const EventSequence& seq, const ItemParams& theta,
                          const LikelihoodTerms& terms, const PriorParams& prior,
                          const ModelConfig& config, double t) {
    return bayes_impl(seq, theta, terms, prior, config, t);
}

}  // namespace rpp
