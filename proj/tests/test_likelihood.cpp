#include <doctest.h>

#include <cmath>
#include <vector>

#include "rpp/likelihood.hpp"
#include "rpp/model.hpp"
#include "rpp/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rpp;

namespace {

// Direct product of the per-interval arrival densities and the terminal
// survival factor, term by term in plain probability space.
double product_likelihood(const EventSequence& seq, const ItemParams& p,
                          const ModelConfig& cfg) {
    double prod = 1.0;
    double mass_prev = 0.0;
    const int n = seq.count();
    for (int i = 1; i <= n; ++i) {
        const double t = seq.arrivals()[i - 1];
        const double mass = relaxation_integral(t, p);
        const double reinforcement = cfg.m + i - 1.0;
        prod *= p.fitness * relaxation(t, p) * reinforcement *
                std::exp(-p.fitness * reinforcement * (mass - mass_prev));
        mass_prev = mass;
    }
    const double window_mass = relaxation_integral(seq.window_end(), p);
    prod *= std::exp(-p.fitness * (cfg.m + n) * (window_mass - mass_prev));
    return prod;
}

}  // namespace

TEST_CASE("log_likelihood equals the interval product form") {
    ModelConfig cfg;
    Rng rng(101);
    for (int k = 0; k < 100; ++k) {
        cfg.m = 1 + static_cast<int>(rng.raw() % 40);
        const int n = static_cast<int>(rng.raw() % 21);
        const double window = rng.uniform(2.0, 20.0);
        const auto seq = fixtures::random_sequence(rng, n, window);
        const auto params = fixtures::random_params(rng);
        const auto terms = log_likelihood(seq, params, cfg);
        const double direct = product_likelihood(seq, params, cfg);
        CHECK(std::exp(terms.log_lik) == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("log_likelihood fixed instances") {
    ModelConfig cfg;
    cfg.m = 2;
    const EventSequence seq("a", {1.0, 2.0}, 5.0);
    const ItemParams params{1.0, 0.0, 1.0};
    const auto terms = log_likelihood(seq, params, cfg);
    CHECK(std::isfinite(terms.log_lik));
    CHECK(terms.log_lik < 0.0);
    CHECK(std::exp(terms.log_lik) ==
          doctest::Approx(product_likelihood(seq, params, cfg)).epsilon(1e-12));

    // no events: only the survival term remains
    const EventSequence empty("b", {}, 5.0);
    cfg.m = 7;
    const auto t0 = log_likelihood(empty, params, cfg);
    CHECK(t0.log_lik ==
          doctest::Approx(-params.fitness * 7.0 * relaxation_integral(5.0, params))
              .epsilon(1e-12));

    // zero fitness with events is the -inf sentinel, not an exception
    const auto dead = log_likelihood(seq, {0.0, 0.0, 1.0}, cfg);
    CHECK(std::isinf(dead.log_lik));
    CHECK(dead.log_lik < 0.0);
}

TEST_CASE("exposure is non-negative and decreases when events move earlier") {
    ModelConfig cfg;
    Rng rng(102);
    for (int k = 0; k < 50; ++k) {
        const auto seq = fixtures::random_sequence(rng, 12, 10.0);
        const auto params = fixtures::random_params(rng);
        const auto stats = SequenceStats::from(seq, cfg);
        const double x = exposure(stats, params);
        CHECK(x >= 0.0);

        // an earlier event carries less mass F(t_i), so X grows
        auto times = seq.arrivals();
        times[3] = times[2];
        const EventSequence earlier("e", times, seq.window_end());
        const double x_earlier = exposure(SequenceStats::from(earlier, cfg), params);
        CHECK(x_earlier >= x);
    }
}

TEST_CASE("mle_fitness is the likelihood argmax in fitness") {
    ModelConfig cfg;
    Rng rng(103);
    for (int k = 0; k < 25; ++k) {
        cfg.m = 5 + static_cast<int>(rng.raw() % 40);
        const auto seq = fixtures::random_sequence(rng, 3 + static_cast<int>(rng.raw() % 15),
                                                   rng.uniform(4.0, 15.0));
        const ItemParams theta{1.0, rng.uniform(-0.5, 1.5), rng.uniform(0.4, 1.6)};
        const double star = mle_fitness(seq, theta, cfg);

        auto ll = [&](double lam) {
            return log_likelihood(seq, ItemParams{lam, theta.mu, theta.sigma}, cfg).log_lik;
        };
        // interior maximum: nudging by 1% strictly decreases the likelihood
        CHECK(ll(star) > ll(star * 1.01));
        CHECK(ll(star) > ll(star * 0.99));
        // and the 1-D numeric argmax lands on the closed form
        const double numeric = oracle::golden_section_max(ll, star / 64.0, star * 64.0, 1e-10);
        CHECK(numeric == doctest::Approx(star).epsilon(1e-6));
    }
}

TEST_CASE("mle_fitness fixed cases") {
    ModelConfig cfg;
    cfg.m = 30;
    const EventSequence empty("a", {}, 10.0);
    CHECK(mle_fitness(empty, {1.0, 1.0, 1.0}, cfg) == 0.0);

    const EventSequence seq("b", {1.0, 2.0, 4.0}, 10.0);
    const ItemParams theta{1.0, 1.0, 1.0};
    const double star = mle_fitness(seq, theta, cfg);
    // n / X with X = (m+n) F(T) - sum F(t_i)
    double x = (30 + 3) * relaxation_integral(10.0, theta);
    for (double t : seq.arrivals()) x -= relaxation_integral(t, theta);
    CHECK(star == doctest::Approx(3.0 / x).epsilon(1e-12));
}

TEST_CASE("grad_mu_sigma matches central finite differences") {
    ModelConfig cfg;
    Rng rng(104);
    for (int k = 0; k < 20; ++k) {
        cfg.m = 2 + static_cast<int>(rng.raw() % 40);
        const auto seq = fixtures::random_sequence(rng, 2 + static_cast<int>(rng.raw() % 25),
                                                   rng.uniform(3.0, 25.0));
        const auto params = fixtures::random_params(rng);
        const auto g = grad_mu_sigma(seq, params, cfg);

        const double fd_mu = oracle::central_diff(
            [&](double mu) {
                return log_likelihood(seq, ItemParams{params.fitness, mu, params.sigma}, cfg)
                    .log_lik;
            },
            params.mu, 1e-6);
        const double fd_sigma = oracle::central_diff(
            [&](double sigma) {
                return log_likelihood(seq, ItemParams{params.fitness, params.mu, sigma}, cfg)
                    .log_lik;
            },
            params.sigma, 1e-6);
        CHECK(g.d_mu == doctest::Approx(fd_mu).epsilon(1e-5));
        CHECK(g.d_sigma == doctest::Approx(fd_sigma).epsilon(1e-5));
    }
}

TEST_CASE("grad_mu_sigma at zero fitness is the log-normal score") {
    ModelConfig cfg;
    const EventSequence seq("a", {0.5, 1.5, 3.0}, 8.0);
    const ItemParams params{0.0, 0.3, 0.9};
    const auto g = grad_mu_sigma(seq, params, cfg);
    double tau_sum = 0.0;
    for (double t : seq.arrivals()) tau_sum += (std::log(t) - params.mu) / params.sigma;
    CHECK(g.d_mu == doctest::Approx(tau_sum / params.sigma).epsilon(1e-12));
}

TEST_CASE("prior_gradients matches finite differences of the closed-form marginal") {
    ModelConfig cfg;
    cfg.m = 20;
    Rng rng(105);
    std::vector<EventSequence> corpus;
    std::vector<SequenceStats> stats;
    std::vector<int> counts;
    for (int d = 0; d < 12; ++d) {
        corpus.push_back(fixtures::random_sequence(rng, static_cast<int>(rng.raw() % 30),
                                                   10.0, "i" + std::to_string(d)));
        stats.push_back(SequenceStats::from(corpus.back(), cfg));
        counts.push_back(corpus.back().count());
    }
    const ItemParams theta{1.0, 0.8, 1.1};

    auto corpus_marginal = [&](double alpha, double beta) {
        double total = 0.0;
        for (const auto& st : stats)
            total += log_marginal_likelihood(st, theta, PriorParams{alpha, beta});
        return total;
    };

    for (int k = 0; k < 20; ++k) {
        const PriorParams prior{rng.uniform(0.3, 8.0), rng.uniform(0.3, 8.0)};
        std::vector<double> latent(stats.size());
        for (std::size_t d = 0; d < stats.size(); ++d)
            latent[d] = latent_fitness(stats[d], theta, prior);
        const auto g = prior_gradients(latent, counts, prior);

        const double fd_alpha = oracle::central_diff(
            [&](double a) { return corpus_marginal(a, prior.beta); }, prior.alpha, 1e-6);
        const double fd_beta = oracle::central_diff(
            [&](double b) { return corpus_marginal(prior.alpha, b); }, prior.beta, 1e-6);
        CHECK(g.d_alpha == doctest::Approx(fd_alpha).epsilon(1e-5));
        CHECK(g.d_beta == doctest::Approx(fd_beta).epsilon(1e-5));
    }
}

TEST_CASE("prior_gradients closed identities") {
    // beta score vanishes exactly when alpha/beta equals the mean fitness
    const std::vector<double> latent{0.5, 1.5, 2.0};
    const std::vector<int> counts{3, 7, 1};
    const double mean = (0.5 + 1.5 + 2.0) / 3.0;
    const double alpha = 2.0;
    const auto g = prior_gradients(latent, counts, {alpha, alpha / mean});
    CHECK(g.d_beta == doctest::Approx(0.0).epsilon(1e-12));

    // N = 1, n = 0: digamma terms cancel, leaving ln(beta lambda / alpha)
    const auto g1 = prior_gradients({0.7}, {0}, {1.3, 2.2});
    CHECK(g1.d_alpha == doctest::Approx(std::log(2.2 * 0.7 / 1.3)).epsilon(1e-10));

    CHECK_THROWS_AS(prior_gradients({-1.0}, {0}, {1.0, 1.0}), invalid_parameter_error);
    CHECK_THROWS_AS(prior_gradients({1.0}, {0}, {0.0, 1.0}), invalid_parameter_error);
}

TEST_CASE("latent_fitness is the posterior mean") {
    ModelConfig cfg;
    cfg.m = 30;
    Rng rng(106);
    for (int k = 0; k < 10; ++k) {
        const auto seq = fixtures::random_sequence(rng, 1 + static_cast<int>(rng.raw() % 20),
                                                   10.0);
        const ItemParams theta{1.0, rng.uniform(0.0, 1.5), rng.uniform(0.4, 1.5)};
        const PriorParams prior{rng.uniform(0.5, 6.0), rng.uniform(0.5, 6.0)};
        const double lam = latent_fitness(seq, theta, prior, cfg);

        // quadrature mean of the gamma(alpha+n, beta+X) posterior density
        const auto stats = SequenceStats::from(seq, cfg);
        const double a = prior.alpha + seq.count();
        const double b = prior.beta + exposure(stats, theta);
        auto weight = [&](double l) {
            return std::pow(l, a - 1.0) * std::exp(-b * l);
        };
        const double hi = (a + 50.0 * std::sqrt(a) + 50.0) / b;
        const double z = oracle::integrate(weight, 0.0, hi, 1e-14);
        const double first = oracle::integrate([&](double l) { return l * weight(l); }, 0.0,
                                               hi, 1e-14);
        CHECK(lam == doctest::Approx(first / z).epsilon(1e-8));
    }
}

TEST_CASE("latent_fitness limits") {
    ModelConfig cfg;
    cfg.m = 30;
    const EventSequence seq("a", {0.5, 1.0, 2.5}, 10.0);
    const ItemParams theta{1.0, 0.8, 1.0};
    // vague prior limit recovers n / X
    const double vague = latent_fitness(seq, theta, {1e-12, 1e-12}, cfg);
    CHECK(vague == doctest::Approx(mle_fitness(seq, theta, cfg)).epsilon(1e-9));

    // no events still yields a strictly positive value
    const EventSequence empty("b", {}, 10.0);
    const PriorParams prior{2.0, 3.0};
    const double lam0 = latent_fitness(empty, theta, prior, cfg);
    CHECK(lam0 > 0.0);
    CHECK(lam0 == doctest::Approx(prior.alpha /
                                  (prior.beta + 30.0 * relaxation_integral(10.0, theta)))
                      .epsilon(1e-12));
}

TEST_CASE("raising one event's relaxation mass lowers X and raises the fitness mle") {
    ModelConfig cfg;
    const EventSequence seq("a", {1.0, 2.0, 4.0, 7.0}, 10.0);
    const ItemParams theta{1.0, 0.9, 0.8};
    const auto stats = SequenceStats::from(seq, cfg);
    const double x = exposure(stats, theta);
    const double base = mle_fitness(seq, theta, cfg);

    // a later event carries more cumulative mass F(t_i)
    const EventSequence later("a", {1.0, 3.5, 4.0, 7.0}, 10.0);
    const auto stats_later = SequenceStats::from(later, cfg);
    CHECK(exposure(stats_later, theta) <= x);
    CHECK(mle_fitness(later, theta, cfg) >= base);
}
