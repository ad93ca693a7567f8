#include "rpp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "rpp/special_functions.hpp"

namespace rpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += threads) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

double median_log_time(const SequenceStats& stats) {
    const int n = stats.count();
    if (n % 2 == 1) return stats.log_times[n / 2];
    return 0.5 * (stats.log_times[n / 2 - 1] + stats.log_times[n / 2]);
}

struct AscentResult {
    double mu = 0.0;
    double sigma = 1.0;
    double value = kNegInf;
    int iterations = 0;
    double gradient_norm = 0.0;
    bool converged = false;
};

// Backtracking gradient ascent on (mu, ln sigma). The objective callback
// returns -inf for points it rejects; the gradient callback returns the
// (mu, sigma)-space gradient, mapped to log-space by the chain rule.
AscentResult ascend_mu_sigma(double mu, double sigma,
                             const std::function<double(double, double)>& value_at,
                             const std::function<MuSigmaGradient(double, double)>& grad_at,
                             const ModelConfig& config, int max_steps) {
    const double s_floor = std::log(config.sigma_floor);
    double s = std::max(std::log(sigma), s_floor);
    double value = value_at(mu, std::exp(s));
    double step = 1.0;

    AscentResult res;
    for (int it = 0; it < max_steps; ++it) {
        const double sig = std::exp(s);
        const MuSigmaGradient g = grad_at(mu, sig);
        const double g_s = g.d_sigma * sig;
        const double norm = std::hypot(g.d_mu, g.d_sigma);
        res.gradient_norm = norm;
        if (norm <= config.gradient_tolerance) {
            res.converged = true;
            break;
        }
        const double sq = g.d_mu * g.d_mu + g_s * g_s;
        bool accepted = false;
        for (; step > 1e-16; step *= 0.5) {
            const double mu_try = mu + step * g.d_mu;
            const double s_try = std::max(s + step * g_s, s_floor);
            const double v_try = value_at(mu_try, std::exp(s_try));
            if (v_try >= value + 1e-4 * step * sq && std::isfinite(v_try)) {
                mu = mu_try;
                s = s_try;
                value = v_try;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no ascent direction left at machine precision
        res.iterations = it + 1;
        step = std::min(step * 2.0, 1e6);
    }
    res.mu = mu;
    res.sigma = std::exp(s);
    res.value = value;
    return res;
}

// sum ln f(t_i) + sum ln(m+i-1), recovered from the unit-fitness likelihood.
double data_terms(const SequenceStats& stats, double mu, double sigma) {
    const auto terms = log_likelihood(stats, ItemParams{1.0, mu, sigma});
    return terms.log_lik + terms.exposure;
}

double profile_log_lik(const SequenceStats& stats, double mu, double sigma) {
    const int n = stats.count();
    const auto terms = log_likelihood(stats, ItemParams{1.0, mu, sigma});
    if (!(terms.exposure > 0.0)) return kNegInf;
    const double data = terms.log_lik + terms.exposure;
    return n * std::log(n / terms.exposure) + data - n;
}

// Marginal log-likelihood of one item at (mu, sigma); prior terms included
// so corpus sums are directly comparable across outer iterations.
double item_marginal(const SequenceStats& stats, double mu, double sigma,
                     const PriorParams& prior) {
    return log_marginal_likelihood(stats, ItemParams{1.0, mu, sigma}, prior);
}

// Score of the corpus marginal in alpha at fixed beta and exposures:
//   G(alpha) = N (ln beta - psi(alpha)) + sum_d [psi(alpha+n_d) - ln(beta+X_d)].
// G is strictly decreasing, so the safeguarded Newton iteration keeps a
// bracket and falls back to bisection whenever a step leaves it.
struct AlphaSolve {
    double alpha = 1.0;
    bool ok = false;
};

AlphaSolve solve_alpha(double beta, const std::vector<int>& counts,
                       const std::vector<double>& exposures, double alpha_start) {
    const double n_items = static_cast<double>(counts.size());
    double log_terms = 0.0;
    for (double x : exposures) log_terms += std::log(beta + x);

    auto score = [&](double a) {
        double s = n_items * (std::log(beta) - digamma(a)) - log_terms;
        for (int n : counts) s += digamma(a + n);
        return s;
    };
    auto dscore = [&](double a) {
        double s = -n_items * trigamma(a);
        for (int n : counts) s += trigamma(a + n);
        return s;
    };

    double lo = 1e-6, hi = 1e6;
    if (!(score(lo) > 0.0) || !(score(hi) < 0.0)) return {alpha_start, false};

    double a = std::clamp(alpha_start, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double g = score(a);
        if (g > 0.0) lo = a;
        else hi = a;
        if (std::fabs(g) < 1e-12 * std::max(1.0, n_items)) break;
        const double dg = dscore(a);
        double next = dg < 0.0 ? a - g / dg : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - a) < 1e-14 * a) {
            a = next;
            break;
        }
        a = next;
    }
    return {a, true};
}

}  // namespace

ItemFit fit_item_mle(const EventSequence& seq, const ModelConfig& config,
                     std::optional<ItemParams> init) {
    config.validate();
    if (seq.count() == 0)
        throw degenerate_fit_error(
            "MLE fit is degenerate with no events (item " + seq.item_id() +
            "); use the prior regime");
    const SequenceStats stats = SequenceStats::from(seq, config);

    double mu0 = median_log_time(stats);
    double sigma0 = 1.0;
    if (init) {
        init->validate();
        mu0 = init->mu;
        sigma0 = init->sigma;
    }

    auto value = [&](double mu, double sigma) { return profile_log_lik(stats, mu, sigma); };
    auto grad = [&](double mu, double sigma) {
        // Envelope theorem: at the profiled fitness the partial in fitness
        // vanishes, so the profile gradient is the fixed-fitness gradient.
        const double lam = mle_fitness(stats, ItemParams{1.0, mu, sigma});
        return grad_mu_sigma(stats, ItemParams{lam, mu, sigma});
    };

    const AscentResult res =
        ascend_mu_sigma(mu0, sigma0, value, grad, config, config.max_inner_iterations);

    ItemFit fit;
    fit.params = ItemParams{0.0, res.mu, res.sigma};
    fit.params.fitness = mle_fitness(stats, fit.params);
    fit.log_lik = log_likelihood(stats, fit.params).log_lik;
    fit.iterations = res.iterations;
    fit.converged = res.converged;
    fit.gradient_norm = res.gradient_norm;
    return fit;
}

FitReport fit_corpus_with_prior(const std::vector<EventSequence>& corpus,
                                const ModelConfig& config, const CorpusFitOptions& options) {
    config.validate();
    options.prior_init.validate();
    if (corpus.empty()) throw ill_posed_error("corpus is empty");
    const int n_items = static_cast<int>(corpus.size());
    bool any_events = false;
    for (const auto& seq : corpus) any_events = any_events || seq.count() > 0;
    if (!any_events)
        throw ill_posed_error("every item has zero events; the prior fit is ill-posed");

    std::vector<SequenceStats> stats;
    stats.reserve(n_items);
    std::vector<int> counts(n_items);
    for (int d = 0; d < n_items; ++d) {
        stats.push_back(SequenceStats::from(corpus[d], config));
        counts[d] = stats[d].count();
    }

    std::vector<double> mu(n_items), sigma(n_items, 1.0);
    for (int d = 0; d < n_items; ++d)
        mu[d] = counts[d] > 0 ? median_log_time(stats[d])
                              : std::log(corpus[d].window_end() / 2.0);

    PriorParams prior = options.prior_init;
    std::vector<double> exposures(n_items, 0.0);
    std::vector<int> item_iters(n_items, 0);
    std::vector<char> item_converged(n_items, 0);
    std::vector<double> item_grad_norm(n_items, 0.0);

    FitReport report;
    report.config_echo = config;

    double corpus_ll = kNegInf;
    for (int outer = 0; outer < config.max_outer_iterations; ++outer) {
        report.outer_iterations = outer + 1;

        // (a) per-item relaxation parameters, fitness at its posterior mean
        parallel_for(n_items, options.threads, [&](int d) {
            auto value = [&](double m_, double s_) { return item_marginal(stats[d], m_, s_, prior); };
            auto grad = [&](double m_, double s_) {
                const double lam = latent_fitness(stats[d], ItemParams{1.0, m_, s_}, prior);
                return grad_mu_sigma(stats[d], ItemParams{lam, m_, s_});
            };
            const AscentResult res = ascend_mu_sigma(mu[d], sigma[d], value, grad, config,
                                                     config.max_inner_iterations);
            mu[d] = res.mu;
            sigma[d] = res.sigma;
            item_iters[d] += res.iterations;
            item_converged[d] = res.converged ? 1 : 0;
            item_grad_norm[d] = res.gradient_norm;
        });

        // (b) posterior-mean fitness
        double fitness_sum = 0.0;
        for (int d = 0; d < n_items; ++d) {
            exposures[d] = exposure(stats[d], ItemParams{1.0, mu[d], sigma[d]});
            fitness_sum += (prior.alpha + counts[d]) / (prior.beta + exposures[d]);
        }

        // (c) prior updates: beta exactly, then alpha by safeguarded Newton
        if (options.update_prior) {
            prior.beta = n_items * prior.alpha / fitness_sum;
            const AlphaSolve sol = solve_alpha(prior.beta, counts, exposures, prior.alpha);
            if (sol.ok) {
                prior.alpha = sol.alpha;
            } else {
                report.alpha_bracketing_failed = true;
            }
        }

        double ll = 0.0;
        for (int d = 0; d < n_items; ++d)
            ll += item_marginal(stats[d], mu[d], sigma[d], prior);
        report.corpus_ll_trace.push_back(ll);
        const bool done = std::isfinite(corpus_ll) &&
                          std::fabs(ll - corpus_ll) <=
                              config.corpus_ll_rel_tolerance * (1.0 + std::fabs(ll));
        corpus_ll = ll;
        if (done) {
            report.converged = true;
            break;
        }
    }

    report.corpus_log_lik = corpus_ll;
    report.prior = prior;
    for (int d = 0; d < n_items; ++d) {
        ItemFit fit;
        fit.params = ItemParams{0.0, mu[d], sigma[d]};
        fit.params.fitness = latent_fitness(stats[d], fit.params, prior);
        fit.log_lik = item_marginal(stats[d], mu[d], sigma[d], prior);
        fit.iterations = item_iters[d];
        fit.converged = item_converged[d] != 0;
        fit.gradient_norm = item_grad_norm[d];
        const auto [it, inserted] = report.per_item.emplace(corpus[d].item_id(), fit);
        if (!inserted)
            throw data_error("duplicate item id in corpus: " + corpus[d].item_id());
    }
    return report;
}

}  // namespace rpp
