#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rpp/likelihood.hpp"
#include "rpp/types.hpp"

namespace rpp {

struct ItemFit {
    ItemParams params;
    double log_lik = 0.0;
    int iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
};

struct FitReport {
    std::map<std::string, ItemFit> per_item;
    std::optional<PriorParams> prior;
    double corpus_log_lik = 0.0;
    // Corpus marginal log-likelihood after each outer iteration.
    std::vector<double> corpus_ll_trace;
    ModelConfig config_echo;
    int outer_iterations = 0;
    bool converged = false;
    bool alpha_bracketing_failed = false;
};

// Maximum-likelihood fit of one item. Fitness is profiled out analytically
// (always n / X at the current relaxation parameters); (mu, ln sigma) ascend
// the profile likelihood by backtracking gradient steps, so the returned
// log-likelihood never falls below the initialization value. Requires at
// least one event; throws degenerate_fit_error otherwise.
ItemFit fit_item_mle(const EventSequence& seq, const ModelConfig& config,
                     std::optional<ItemParams> init = std::nullopt);

struct CorpusFitOptions {
    PriorParams prior_init{1.0, 1.0};
    // When false, (alpha, beta) stay pinned at prior_init and only the
    // per-item parameters move.
    bool update_prior = true;
    // Worker count for the per-item sweep; results are identical for any
    // value because items are fitted independently and reduced in item order.
    int threads = 1;
};

// Empirical-Bayes fit of a corpus: alternate (a) per-item ascent of the
// marginal likelihood in (mu_d, sigma_d) with fitness at its posterior mean,
// (b) posterior-mean refresh, (c) exact coordinate updates of the prior --
// beta from the closed-form stationarity condition, alpha by safeguarded
// Newton on the marginal score. Every step leaves the corpus marginal
// log-likelihood non-decreasing; iteration stops when its relative change
// drops below tolerance. Items with no events are permitted.
FitReport fit_corpus_with_prior(const std::vector<EventSequence>& corpus,
                                const ModelConfig& config,
                                const CorpusFitOptions& options = {});

}  // namespace rpp
