#include <doctest.h>

#include <cmath>

#include "rpp/estimation.hpp"
#include "rpp/likelihood.hpp"
#include "rpp/rng.hpp"
#include "rpp/simulation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rpp;

TEST_CASE("fit_item_mle recovers pooled parameters from simulation") {
    SimConfig sim;
    sim.params = {1.5, 1.0, 0.8};
    sim.m = 30;
    sim.window_end = 20.0;
    sim.replicas = 200;
    sim.seed = 4242;
    ModelConfig cfg;
    cfg.m = 30;

    double sum_lambda = 0.0, sum_mu = 0.0, sum_sigma = 0.0;
    int fitted = 0;
    for (const auto& seq : simulate(sim)) {
        if (seq.count() == 0) continue;
        const auto fit = fit_item_mle(seq, cfg);
        sum_lambda += fit.params.fitness;
        sum_mu += fit.params.mu;
        sum_sigma += fit.params.sigma;
        ++fitted;
    }
    REQUIRE(fitted > 190);
    CHECK(sum_mu / fitted == doctest::Approx(1.0).epsilon(0.05));
    CHECK(sum_sigma / fitted == doctest::Approx(0.8).epsilon(0.05));
    CHECK(sum_lambda / fitted == doctest::Approx(1.5).epsilon(0.10));
}

TEST_CASE("fit_item_mle contract details") {
    ModelConfig cfg;
    cfg.m = 30;
    Rng rng(301);
    const auto seq = fixtures::random_sequence(rng, 25, 10.0);

    CHECK_THROWS_AS(fit_item_mle(EventSequence("z", {}, 5.0), cfg), degenerate_fit_error);

    // ascent: converged value dominates the likelihood at a poor init
    const ItemParams bad_init{1.0, 3.0, 2.5};
    const auto fit = fit_item_mle(seq, cfg, bad_init);
    const auto stats = SequenceStats::from(seq, cfg);
    ItemParams at_init = bad_init;
    at_init.fitness = mle_fitness(stats, bad_init);
    CHECK(fit.log_lik >= log_likelihood(stats, at_init).log_lik);

    // profile identity: the returned fitness is exactly n / X(mu*, sigma*)
    CHECK(fit.params.fitness == mle_fitness(stats, fit.params));

    // stationarity at convergence
    REQUIRE(fit.converged);
    const auto g = grad_mu_sigma(stats, fit.params);
    CHECK(std::hypot(g.d_mu, g.d_sigma) <= cfg.gradient_tolerance);

    // deterministic
    const auto fit2 = fit_item_mle(seq, cfg, bad_init);
    CHECK(fit2.params.fitness == fit.params.fitness);
    CHECK(fit2.params.mu == fit.params.mu);
    CHECK(fit2.params.sigma == fit.params.sigma);
}

TEST_CASE("fit_corpus_with_prior recovers the prior on a synthetic corpus") {
    const PriorParams truth{4.0, 4.0};
    ThetaSpec spec;
    SimConfig sim;
    sim.m = 30;
    sim.window_end = 10.0;
    sim.seed = 515;
    const auto sample = simulate_corpus(truth, spec, 250, sim);

    ModelConfig cfg;
    cfg.m = 30;
    const auto report = fit_corpus_with_prior(sample.sequences, cfg);

    REQUIRE(report.prior.has_value());
    CHECK(report.prior->mean() == doctest::Approx(1.0).epsilon(0.20));

    // ascent: corpus log-likelihood trace is monotone up to tiny slack
    for (std::size_t i = 1; i < report.corpus_ll_trace.size(); ++i)
        CHECK(report.corpus_ll_trace[i] >=
              report.corpus_ll_trace[i - 1] - 1e-9 * std::fabs(report.corpus_ll_trace[i]));

    // every input item is present exactly once
    CHECK(report.per_item.size() == sample.sequences.size());

    // prior stationarity at convergence
    std::vector<double> latent;
    std::vector<int> counts;
    for (const auto& seq : sample.sequences) {
        const auto& item = report.per_item.at(seq.item_id());
        latent.push_back(item.params.fitness);
        counts.push_back(seq.count());
    }
    const auto g = prior_gradients(latent, counts, *report.prior);
    const double n = double(latent.size());
    CHECK(std::fabs(g.d_beta) / (n * report.prior->alpha / report.prior->beta) < 1e-4);
    CHECK(std::fabs(g.d_alpha) / n < 1e-4);
}

TEST_CASE("single-item corpus satisfies the posterior-mean identity") {
    ModelConfig cfg;
    cfg.m = 30;
    Rng rng(303);
    const auto seq = fixtures::random_sequence(rng, 12, 10.0);
    const auto report = fit_corpus_with_prior({seq}, cfg);
    const auto& item = report.per_item.at(seq.item_id());
    const double expected =
        latent_fitness(seq, item.params, *report.prior, cfg);
    CHECK(item.params.fitness == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ill-posed corpora are rejected") {
    ModelConfig cfg;
    CHECK_THROWS_AS(fit_corpus_with_prior({}, cfg), ill_posed_error);
    const std::vector<EventSequence> all_empty{EventSequence("a", {}, 5.0),
                                               EventSequence("b", {}, 5.0)};
    CHECK_THROWS_AS(fit_corpus_with_prior(all_empty, cfg), ill_posed_error);
}

TEST_CASE("zero-event items are carried through the prior regime") {
    ModelConfig cfg;
    cfg.m = 30;
    Rng rng(304);
    std::vector<EventSequence> corpus;
    for (int d = 0; d < 8; ++d)
        corpus.push_back(fixtures::random_sequence(rng, 10 + d, 10.0, "i" + std::to_string(d)));
    corpus.push_back(EventSequence("empty", {}, 10.0));

    const auto report = fit_corpus_with_prior(corpus, cfg);
    const auto& empty_fit = report.per_item.at("empty");
    CHECK(empty_fit.params.fitness > 0.0);  // no null forecast under the prior
}

TEST_CASE("pinned near-zero prior reproduces per-item mle") {
    ModelConfig cfg;
    cfg.m = 30;
    SimConfig sim;
    sim.params = {1.5, 1.0, 0.8};
    sim.m = 30;
    sim.window_end = 10.0;
    sim.replicas = 20;
    sim.seed = 606;
    const auto corpus = simulate(sim);

    CorpusFitOptions options;
    options.prior_init = {1e-8, 1e-8};
    options.update_prior = false;
    const auto report = fit_corpus_with_prior(corpus, cfg, options);

    for (const auto& seq : corpus) {
        if (seq.count() < 10) continue;
        const auto mle = fit_item_mle(seq, cfg);
        const auto& pinned = report.per_item.at(seq.item_id());
        CHECK(pinned.params.fitness ==
              doctest::Approx(mle.params.fitness).epsilon(1e-3));
    }
}

TEST_CASE("corpus fit is deterministic and thread-count independent") {
    ModelConfig cfg;
    cfg.m = 20;
    Rng rng(305);
    std::vector<EventSequence> corpus;
    for (int d = 0; d < 12; ++d)
        corpus.push_back(
            fixtures::random_sequence(rng, 5 + int(rng.raw() % 30), 10.0,
                                      "i" + std::to_string(d)));

    CorpusFitOptions serial;
    serial.threads = 1;
    CorpusFitOptions parallel;
    parallel.threads = 4;
    const auto a = fit_corpus_with_prior(corpus, cfg, serial);
    const auto b = fit_corpus_with_prior(corpus, cfg, parallel);

    CHECK(a.prior->alpha == b.prior->alpha);
    CHECK(a.prior->beta == b.prior->beta);
    CHECK(a.corpus_log_lik == b.corpus_log_lik);
    for (const auto& [id, fit] : a.per_item) {
        CHECK(fit.params.fitness == b.per_item.at(id).params.fitness);
        CHECK(fit.params.mu == b.per_item.at(id).params.mu);
        CHECK(fit.params.sigma == b.per_item.at(id).params.sigma);
    }
}
