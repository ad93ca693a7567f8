#include "rpp/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpp/special_functions.hpp"

namespace rpp {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One pass over the arrival times at fixed (mu, sigma): cumulative
// relaxation mass at the window end, the exposure X, and sum ln f(t_i).
struct ThetaEval {
    double window_mass = 0.0;  // F(T)
    double exposure = 0.0;     // X
    double sum_log_f = 0.0;    // sum_i ln f(t_i)
};

ThetaEval evaluate_theta(const SequenceStats& stats, double mu, double sigma) {
    ThetaEval ev;
    const double tau_T = (stats.log_window - mu) / sigma;
    ev.window_mass = norm_cdf(tau_T);
    const int n = stats.count();
    double gap_sum = 0.0;  // sum_i (F(T) - F(t_i)), each term >= 0
    double logf = 0.0;
    for (int i = 0; i < n; ++i) {
        const double tau = (stats.log_times[i] - mu) / sigma;
        gap_sum += ev.window_mass - norm_cdf(tau);
        logf += -kLogSqrt2Pi - std::log(sigma) - stats.log_times[i] - 0.5 * tau * tau;
    }
    ev.exposure = stats.m * ev.window_mass + gap_sum;
    ev.sum_log_f = logf;
    return ev;
}

}  // namespace

SequenceStats SequenceStats::from(const EventSequence& seq, const ModelConfig& config) {
    config.validate();
    SequenceStats stats;
    stats.m = config.m;
    stats.log_window = std::log(seq.window_end());
    // The clamp floor never exceeds the window, so clamped times stay in
    // (0, T] and the exposure terms keep their sign.
    const double floor = std::min(config.time_floor, seq.window_end());
    stats.log_times.reserve(seq.arrivals().size());
    for (double t : seq.arrivals()) stats.log_times.push_back(std::log(std::max(t, floor)));
    const int n = stats.count();
    stats.log_reinforcement = std::lgamma(double(config.m) + n) - std::lgamma(double(config.m));
    return stats;
}

double exposure(const SequenceStats& stats, const ItemParams& params) {
    params.validate();
    return evaluate_theta(stats, params.mu, params.sigma).exposure;
}

LikelihoodTerms log_likelihood(const SequenceStats& stats, const ItemParams& params) {
    params.validate();
    const int n = stats.count();
    const ThetaEval ev = evaluate_theta(stats, params.mu, params.sigma);
    LikelihoodTerms terms;
    terms.exposure = ev.exposure;
    if (params.fitness == 0.0 && n > 0) {
        terms.log_lik = kNegInf;
        return terms;
    }
    const double rate_term = n > 0 ? n * std::log(params.fitness) : 0.0;
    terms.log_lik = rate_term + stats.log_reinforcement + ev.sum_log_f -
                    params.fitness * ev.exposure;
    return terms;
}

LikelihoodTerms log_likelihood(const EventSequence& seq, const ItemParams& params,
                               const ModelConfig& config) {
    return log_likelihood(SequenceStats::from(seq, config), params);
}

double mle_fitness(const SequenceStats& stats, const ItemParams& theta) {
    const int n = stats.count();
    if (n == 0) return 0.0;
    const double x = exposure(stats, theta);
    if (x <= 0.0)
        throw degenerate_exposure_error("exposure X = 0 with events present");
    return n / x;
}

double mle_fitness(const EventSequence& seq, const ItemParams& theta, const ModelConfig& config) {
    return mle_fitness(SequenceStats::from(seq, config), theta);
}

MuSigmaGradient grad_mu_sigma(const SequenceStats& stats, const ItemParams& params) {
    params.validate();
    const double mu = params.mu;
    const double sigma = params.sigma;
    const double lam = params.fitness;
    const int n = stats.count();

    const double tau_T = (stats.log_window - mu) / sigma;
    const double phi_T = norm_pdf(tau_T);

    double acc_mu = lam * (n + stats.m) * phi_T;
    double acc_sigma = lam * (n + stats.m) * tau_T * phi_T - n;
    for (int i = 0; i < n; ++i) {
        const double tau = (stats.log_times[i] - mu) / sigma;
        const double phi = norm_pdf(tau);
        acc_mu += tau - lam * phi;
        acc_sigma += tau * tau - lam * tau * phi;
    }
    return {acc_mu / sigma, acc_sigma / sigma};
}

MuSigmaGradient grad_mu_sigma(const EventSequence& seq, const ItemParams& params,
                              const ModelConfig& config) {
    return grad_mu_sigma(SequenceStats::from(seq, config), params);
}

PriorGradient prior_gradients(const std::vector<double>& latent_fitness,
                              const std::vector<int>& counts, const PriorParams& prior) {
    prior.validate();
    if (latent_fitness.size() != counts.size())
        throw invalid_parameter_error("latent_fitness and counts must have equal length");
    const double n_items = static_cast<double>(latent_fitness.size());
    const double psi_alpha = digamma(prior.alpha);

    PriorGradient g;
    g.d_beta = n_items * prior.alpha / prior.beta;
    g.d_alpha = n_items * (std::log(prior.beta) - psi_alpha);
    for (std::size_t d = 0; d < latent_fitness.size(); ++d) {
        const double lam = latent_fitness[d];
        if (!(lam > 0.0)) throw invalid_parameter_error("latent fitness must be > 0");
        if (counts[d] < 0) throw invalid_parameter_error("counts must be >= 0");
        g.d_beta -= lam;
        g.d_alpha += std::log(lam / (prior.alpha + counts[d])) + digamma(prior.alpha + counts[d]);
    }
    return g;
}

double latent_fitness(const SequenceStats& stats, const ItemParams& theta,
                      const PriorParams& prior) {
    prior.validate();
    const double denom = prior.beta + exposure(stats, theta);
    if (!(denom > 0.0))
        throw degenerate_exposure_error("beta + X must be > 0");
    return (prior.alpha + stats.count()) / denom;
}

double latent_fitness(const EventSequence& seq, const ItemParams& theta,
                      const PriorParams& prior, const ModelConfig& config) {
    return latent_fitness(SequenceStats::from(seq, config), theta, prior);
}

double log_marginal_likelihood(const SequenceStats& stats, const ItemParams& theta,
                               const PriorParams& prior) {
    theta.validate();
    prior.validate();
    const int n = stats.count();
    const ThetaEval ev = evaluate_theta(stats, theta.mu, theta.sigma);
    const double denom = prior.beta + ev.exposure;
    if (!(denom > 0.0)) return kNegInf;
    return stats.log_reinforcement + ev.sum_log_f + prior.alpha * std::log(prior.beta) -
           std::lgamma(prior.alpha) + std::lgamma(prior.alpha + n) -
           (prior.alpha + n) * std::log(denom);
}

}  // namespace rpp
