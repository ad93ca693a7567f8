#pragma once

#include <vector>

#include "rpp/types.hpp"

namespace rpp {

// Per-sequence sufficient statistics for likelihood work: clamped log
// arrival times, the log window end, and the reinforcement log-product
// sum_{i=1}^{n} ln(m+i-1). Built once per item, reused across optimizer
// iterations.
struct SequenceStats {
    std::vector<double> log_times;
    double log_window = 0.0;
    int m = 1;
    double log_reinforcement = 0.0;

    int count() const { return static_cast<int>(log_times.size()); }

    static SequenceStats from(const EventSequence& seq, const ModelConfig& config);
};

struct LikelihoodTerms {
    // X = (m+n) F(T) - sum_i F(t_i), the reinforcement-weighted relaxation
    // mass accumulated over the window. Non-negative for arrivals in [0, T].
    double exposure = 0.0;
    // -inf sentinel when fitness = 0 with n > 0, so optimizers can reject
    // the point without exception machinery.
    double log_lik = 0.0;
};

struct MuSigmaGradient {
    double d_mu = 0.0;
    double d_sigma = 0.0;
};

struct PriorGradient {
    double d_alpha = 0.0;
    double d_beta = 0.0;
};

// Effective exposure X at the given (mu, sigma); fitness is ignored.
// Accumulated as m*F(T) + sum_i (F(T) - F(t_i)), every term non-negative,
// so the result cannot go negative through cancellation.
double exposure(const SequenceStats& stats, const ItemParams& params);

// ln L = n ln(fitness) + sum ln(m+i-1) + sum ln f(t_i) - fitness * X.
LikelihoodTerms log_likelihood(const SequenceStats& stats, const ItemParams& params);
LikelihoodTerms log_likelihood(const EventSequence& seq, const ItemParams& params,
                               const ModelConfig& config);

// Closed-form maximizer of the likelihood in fitness: n / X. Returns 0 when
// n = 0; throws degenerate_exposure_error when X = 0 with n > 0.
double mle_fitness(const SequenceStats& stats, const ItemParams& theta);
double mle_fitness(const EventSequence& seq, const ItemParams& theta, const ModelConfig& config);

// Analytic gradient of ln L in (mu, sigma) at fixed fitness:
//   dL/dmu    = (1/sigma) { sum_i [tau_i - lam phi(tau_i)] + lam (n+m) phi(tau_T) }
//   dL/dsigma = (1/sigma) { sum_i [tau_i^2 - lam tau_i phi(tau_i)]
//                           + lam (n+m) tau_T phi(tau_T) - n }
// with tau_i = (ln t_i - mu)/sigma, tau_T = (ln T - mu)/sigma.
MuSigmaGradient grad_mu_sigma(const SequenceStats& stats, const ItemParams& params);
MuSigmaGradient grad_mu_sigma(const EventSequence& seq, const ItemParams& params,
                              const ModelConfig& config);

// Gradient of the corpus marginal log-likelihood in the prior parameters,
// evaluated at given latent fitness values:
//   dL/dbeta  = N alpha / beta - sum_d lambda_d
//   dL/dalpha = N (ln beta - psi0(alpha)) + sum_d ln(lambda_d / (alpha+n_d))
//               + sum_d psi0(alpha+n_d).
PriorGradient prior_gradients(const std::vector<double>& latent_fitness,
                              const std::vector<int>& counts, const PriorParams& prior);

// Posterior-mean fitness (alpha + n) / (beta + X); fitness in theta ignored.
double latent_fitness(const SequenceStats& stats, const ItemParams& theta,
                      const PriorParams& prior);
double latent_fitness(const EventSequence& seq, const ItemParams& theta,
                      const PriorParams& prior, const ModelConfig& config);

// One item's marginal log-likelihood with fitness integrated out under the
// gamma prior:
//   sum ln(m+i-1) + sum ln f(t_i) + alpha ln beta - lnG(alpha)
//   + lnG(alpha+n) - (alpha+n) ln(beta+X).
double log_marginal_likelihood(const SequenceStats& stats, const ItemParams& theta,
                               const PriorParams& prior);

}  // namespace rpp
