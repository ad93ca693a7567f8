#pragma once

#include "rpp/likelihood.hpp"
#include "rpp/types.hpp"

namespace rpp {

enum class Regime { mle, bayes };

// Forecast of the cumulative count at one horizon. Divergent posterior
// moments are first-class reported states, never silently clipped: when
// mean_divergent is set, point is +inf; when variance_divergent is set,
// variance is unset. The point forecast may be finite while the variance
// diverges (beta + X in (Y, 2Y]).
struct Forecast {
    double horizon = 0.0;
    Regime regime = Regime::mle;
    double point = 0.0;
    bool mean_divergent = false;
    double variance = 0.0;
    bool variance_divergent = false;
    bool has_variance = false;
};

struct GammaPosterior {
    double shape = 0.0;  // alpha + n
    double rate = 0.0;   // beta + X
};

// Point prediction c(t) = (m+n) exp(fitness * (F(t) - F(T))) - m for t >= T.
// Returns exactly n at t = T.
Forecast predict_mle(const EventSequence& seq, const ItemParams& params,
                     const ModelConfig& config, double t);

// Gamma posterior over fitness given the sequence: gamma(alpha+n, beta+X).
GammaPosterior posterior(const EventSequence& seq, const ItemParams& theta,
                         const PriorParams& prior, const ModelConfig& config);

// Posterior-mean prediction
//   <c(t)> = (m+n) ((beta+X)/(beta+X-Y))^(alpha+n) - m,  Y = F(t) - F(T),
// with the posterior variance of c(t) attached when it exists:
//   var = (m+n)^2 [ ((beta+X)/(beta+X-2Y))^(alpha+n)
//                   - ((beta+X)/(beta+X-Y))^(2(alpha+n)) ].
// Powers are evaluated in log space so counts in the thousands survive.
Forecast predict_bayes(const EventSequence& seq, const ItemParams& theta,
                       const LikelihoodTerms& terms, const PriorParams& prior,
                       const ModelConfig& config, double t);

// Variance-only accessor with the same divergence rules as predict_bayes.
Forecast predict_variance(const EventSequence& seq, const ItemParams& theta,
                          const LikelihoodTerms& terms, const PriorParams& prior,
                          const ModelConfig& config, double t);

}  // namespace rpp
