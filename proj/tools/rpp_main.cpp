// rpp: reinforced Poisson process popularity modeling tool.
//
// Subcommands: simulate, fit, predict, benchmark. Exit codes are a stable
// contract: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpp/baselines.hpp"
#include "rpp/dataset.hpp"
#include "rpp/estimation.hpp"
#include "rpp/evaluation.hpp"
#include "rpp/likelihood.hpp"
#include "rpp/prediction.hpp"
#include "rpp/simulation.hpp"
#include "rpp/types.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t pick_seed(std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int env_threads() {
    if (const char* env = std::getenv("RPP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

json base_report(const std::string& command, std::optional<std::uint64_t> seed) {
    json report;
    report["schema"] = "rpp-report/1";
    report["tool"] = "rpp";
    report["version"] = kToolVersion;
    report["command"] = command;
    if (seed) report["seed"] = *seed;
    else report["seed"] = nullptr;
    return report;
}

void attach_input(json& report, const std::string& role, const std::string& path) {
    report["inputs"][role] = {{"path", path}, {"fnv1a64", rpp::fnv1a64_file(path)}};
}

void write_report(const json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw rpp::data_error("cannot write report: " + path);
    out << report.dump(2) << "\n";
    out.flush();
    if (!out) throw rpp::data_error("failed writing report: " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rpp::data_error("cannot open: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw rpp::data_error("malformed JSON in " + path + ": " + e.what());
    }
    return doc;
}

std::vector<double> parse_horizon_list(const std::string& text) {
    std::vector<double> horizons;
    std::string tok;
    std::stringstream ss(text);
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-', 1);
        if (dash != std::string::npos) {
            const double lo = std::stod(tok.substr(0, dash));
            const double hi = std::stod(tok.substr(dash + 1));
            for (double h = lo; h <= hi + 1e-9; h += 1.0) horizons.push_back(h);
        } else if (!tok.empty()) {
            horizons.push_back(std::stod(tok));
        }
    }
    if (horizons.empty()) throw UsageError("no horizons given");
    return horizons;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string out_path;
    std::string truth_path;
    int n = 100;
    double window_end = 10.0;
    int m = 30;
    std::optional<std::uint64_t> seed;
    double alpha = 4.0;
    double beta = 4.0;
    std::optional<double> fixed_lambda;
    double fixed_mu = 1.0;
    double fixed_sigma = 1.0;
    rpp::ThetaSpec theta;
};

int run_simulate(const SimulateArgs& args) {
    const std::uint64_t seed = pick_seed(args.seed);

    rpp::SimConfig sim;
    sim.m = args.m;
    sim.window_end = args.window_end;
    sim.seed = seed;

    rpp::Dataset dataset;
    dataset.window_end = args.window_end;
    rpp::TruthSidecar truth;
    truth.has_seed = true;
    truth.seed = seed;

    if (args.fixed_lambda) {
        sim.params = rpp::ItemParams{*args.fixed_lambda, args.fixed_mu, args.fixed_sigma};
        sim.replicas = args.n;
        dataset.sequences = rpp::simulate(sim);
        for (const auto& seq : dataset.sequences) {
            truth.ids.push_back(seq.item_id());
            truth.params.push_back(sim.params);
        }
    } else {
        const rpp::PriorParams prior{args.alpha, args.beta};
        auto sample = rpp::simulate_corpus(prior, args.theta, args.n, sim);
        dataset.sequences = std::move(sample.sequences);
        truth.has_prior = true;
        truth.prior = prior;
        for (std::size_t i = 0; i < dataset.sequences.size(); ++i)
            truth.ids.push_back(dataset.sequences[i].item_id());
        truth.params = std::move(sample.truth);
    }

    rpp::write_dataset(dataset, args.out_path);
    rpp::write_truth(truth, args.truth_path);

    std::size_t events = 0;
    for (const auto& seq : dataset.sequences) events += seq.arrivals().size();
    std::cout << "simulated " << dataset.sequences.size() << " items, " << events
              << " events, window_end=" << args.window_end << ", seed=" << seed << "\n"
              << "dataset: " << args.out_path << "\n"
              << "truth:   " << args.truth_path << "\n";
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string data_path;
    std::string out_path;
    std::string regime = "prior";
    rpp::ModelConfig config;
    int threads = 0;  // 0: take RPP_THREADS
};

json item_fit_json(const rpp::ItemFit& fit) {
    return {{"lambda", fit.params.fitness}, {"mu", fit.params.mu},
            {"sigma", fit.params.sigma},   {"log_lik", fit.log_lik},
            {"iterations", fit.iterations}, {"converged", fit.converged},
            {"gradient_norm", fit.gradient_norm}};
}

json config_json(const rpp::ModelConfig& config) {
    return {{"m", config.m},
            {"time_floor", config.time_floor},
            {"gradient_tolerance", config.gradient_tolerance},
            {"corpus_ll_rel_tolerance", config.corpus_ll_rel_tolerance},
            {"max_outer_iterations", config.max_outer_iterations},
            {"max_inner_iterations", config.max_inner_iterations},
            {"sigma_floor", config.sigma_floor}};
}

int run_fit(const FitArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();
    const auto dataset = rpp::read_dataset(args.data_path);
    const int threads = args.threads > 0 ? args.threads : env_threads();

    json report = base_report("fit", std::nullopt);
    attach_input(report, "dataset", args.data_path);
    report["config"] = config_json(args.config);
    report["config"]["regime"] = args.regime;

    json items = json::object();
    json skipped = json::object();

    if (args.regime == "prior") {
        rpp::CorpusFitOptions options;
        options.threads = threads;
        const auto fit = rpp::fit_corpus_with_prior(dataset.sequences, args.config, options);
        for (const auto& [id, item] : fit.per_item) items[id] = item_fit_json(item);
        report["fit"] = {{"regime", "prior"},
                         {"prior", {{"alpha", fit.prior->alpha}, {"beta", fit.prior->beta}}},
                         {"corpus_log_lik", fit.corpus_log_lik},
                         {"outer_iterations", fit.outer_iterations},
                         {"converged", fit.converged},
                         {"alpha_bracketing_failed", fit.alpha_bracketing_failed}};
        std::cout << "prior fit: alpha=" << fit.prior->alpha << " beta=" << fit.prior->beta
                  << " (mean " << fit.prior->mean() << ")\n"
                  << "corpus log-lik " << std::setprecision(12) << fit.corpus_log_lik
                  << " after " << fit.outer_iterations << " outer iterations"
                  << (fit.converged ? "" : " [not converged]") << "\n";
    } else if (args.regime == "mle") {
        double corpus_ll = 0.0;
        int converged = 0;
        for (const auto& seq : dataset.sequences) {
            if (seq.count() == 0) {
                skipped[seq.item_id()] = "no events in window; MLE undefined";
                continue;
            }
            const auto fit = rpp::fit_item_mle(seq, args.config);
            items[seq.item_id()] = item_fit_json(fit);
            corpus_ll += fit.log_lik;
            converged += fit.converged ? 1 : 0;
        }
        if (items.empty())
            throw rpp::ill_posed_error("no item has events; nothing to fit with MLE");
        report["fit"] = {{"regime", "mle"},
                         {"corpus_log_lik", corpus_ll},
                         {"converged_items", converged}};
        std::cout << "mle fit: " << items.size() << " items (" << skipped.size()
                  << " skipped), total log-lik " << std::setprecision(12) << corpus_ll
                  << "\n";
    } else {
        throw UsageError("unknown regime: " + args.regime);
    }

    report["fit"]["items"] = std::move(items);
    report["fit"]["skipped"] = std::move(skipped);
    report["wall_clock_sec"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_report(report, args.out_path);
    std::cout << "report: " << args.out_path << "\n";
    return 0;
}

// ----------------------------------------------------------------- predict

struct PredictArgs {
    std::string data_path;
    std::string fit_path;
    std::string out_path;
    std::string horizons_text;
};

struct LoadedFit {
    std::string regime;
    std::optional<rpp::PriorParams> prior;
    std::map<std::string, rpp::ItemParams> items;
    rpp::ModelConfig config;
};

LoadedFit load_fit_report(const std::string& path) {
    const json doc = read_json_file(path);
    if (doc.value("schema", "") != "rpp-report/1" || !doc.contains("fit"))
        throw rpp::data_error(path + ": not an rpp fit report");
    LoadedFit fit;
    fit.regime = doc["fit"].value("regime", "");
    if (doc["fit"].contains("prior")) {
        fit.prior = rpp::PriorParams{doc["fit"]["prior"].value("alpha", 0.0),
                                     doc["fit"]["prior"].value("beta", 0.0)};
    }
    const auto& cfg = doc.at("config");
    fit.config.m = cfg.value("m", 30);
    fit.config.time_floor = cfg.value("time_floor", fit.config.time_floor);
    for (const auto& [id, item] : doc["fit"].at("items").items()) {
        fit.items[id] = rpp::ItemParams{item.at("lambda").get<double>(),
                                        item.at("mu").get<double>(),
                                        item.at("sigma").get<double>()};
    }
    return fit;
}

json forecast_json(const rpp::Forecast& f) {
    json out;
    out["t"] = f.horizon;
    if (f.mean_divergent) {
        out["point"] = nullptr;
        out["mean_divergent"] = true;
    } else {
        out["point"] = f.point;
        out["mean_divergent"] = false;
    }
    if (f.has_variance) {
        out["variance"] = f.variance;
        out["variance_divergent"] = false;
    } else {
        out["variance"] = nullptr;
        out["variance_divergent"] = f.variance_divergent;
    }
    return out;
}

int run_predict(const PredictArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();
    const auto dataset = rpp::read_dataset(args.data_path);
    const auto fit = load_fit_report(args.fit_path);
    const auto horizons = parse_horizon_list(args.horizons_text);

    // Reconcile item sets before doing any work.
    std::vector<std::string> missing_fit, missing_data;
    std::set<std::string> data_ids;
    for (const auto& seq : dataset.sequences) {
        data_ids.insert(seq.item_id());
        if (!fit.items.count(seq.item_id())) missing_fit.push_back(seq.item_id());
    }
    for (const auto& [id, _] : fit.items)
        if (!data_ids.count(id)) missing_data.push_back(id);
    if (!missing_fit.empty() || !missing_data.empty()) {
        std::string msg = "fit report and dataset disagree;";
        if (!missing_fit.empty()) {
            msg += " items without fit:";
            for (const auto& id : missing_fit) msg += " " + id;
        }
        if (!missing_data.empty()) {
            msg += " fitted items missing from dataset:";
            for (const auto& id : missing_data) msg += " " + id;
        }
        throw rpp::data_error(msg);
    }
    for (const auto& seq : dataset.sequences)
        for (double h : horizons)
            if (h < seq.window_end())
                throw UsageError("horizon " + std::to_string(h) +
                                 " precedes window end of item " + seq.item_id());

    json report = base_report("predict", std::nullopt);
    attach_input(report, "dataset", args.data_path);
    attach_input(report, "fit", args.fit_path);
    report["config"] = {{"horizons", horizons}, {"regime", fit.regime}};

    json items = json::object();
    for (const auto& seq : dataset.sequences) {
        const auto& params = fit.items.at(seq.item_id());
        json forecasts = json::array();
        for (double h : horizons) {
            rpp::Forecast f;
            if (fit.prior) {
                const auto terms = rpp::log_likelihood(seq, params, fit.config);
                f = rpp::predict_bayes(seq, params, terms, *fit.prior, fit.config, h);
            } else {
                f = rpp::predict_mle(seq, params, fit.config, h);
            }
            forecasts.push_back(forecast_json(f));
        }
        items[seq.item_id()] = {{"observed", seq.count()}, {"forecasts", forecasts}};
    }
    report["predictions"] = std::move(items);
    report["wall_clock_sec"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_report(report, args.out_path);
    std::cout << "predicted " << dataset.sequences.size() << " items at " << horizons.size()
              << " horizons (" << fit.regime << " fit)\nreport: " << args.out_path << "\n";
    return 0;
}

// --------------------------------------------------------------- benchmark

struct BenchmarkArgs {
    std::string data_path;
    std::string out_path;
    std::string models_text = "rpp-prior,rpp-mle,sh,ar";
    double train_end = 10.0;
    std::string horizons_text = "1-10";
    double epsilon = 0.1;
    rpp::ModelConfig config;
    int ar_order = 3;
    double period = 1.0;
    int threads = 0;
};

rpp::EventSequence truncate_sequence(const rpp::EventSequence& seq, double train_end) {
    std::vector<double> kept;
    for (double t : seq.arrivals()) {
        if (t <= train_end) kept.push_back(t);
    }
    return {seq.item_id(), std::move(kept), train_end};
}

int as_period_index(double t, double period, const char* what) {
    const double ratio = t / period;
    const double rounded = std::round(ratio);
    if (std::fabs(ratio - rounded) > 1e-9)
        throw UsageError(std::string(what) + " must be a whole number of periods");
    return static_cast<int>(rounded);
}

int run_benchmark(const BenchmarkArgs& args) {
    const auto t_start = std::chrono::steady_clock::now();
    const auto dataset = rpp::read_dataset(args.data_path);
    const int threads = args.threads > 0 ? args.threads : env_threads();

    std::vector<std::string> models;
    {
        std::stringstream ss(args.models_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            if (tok != "rpp-prior" && tok != "rpp-mle" && tok != "sh" && tok != "ar")
                throw UsageError("unknown model: " + tok);
            models.push_back(tok);
        }
        if (models.empty()) throw UsageError("no models selected");
    }

    if (!(args.train_end > 0.0) || args.train_end >= dataset.window_end)
        throw rpp::data_error("training window must end inside the dataset window");

    auto horizons = parse_horizon_list(args.horizons_text);
    std::vector<double> usable;
    for (double h : horizons) {
        if (args.train_end + h <= dataset.window_end + 1e-9) usable.push_back(h);
        else std::cerr << "warning: horizon " << h << " exceeds data coverage; dropped\n";
    }
    if (usable.empty()) throw rpp::data_error("no horizon lies within the data window");
    horizons = usable;

    // Training corpus and realized counts.
    std::vector<rpp::EventSequence> train;
    train.reserve(dataset.sequences.size());
    for (const auto& seq : dataset.sequences) train.push_back(truncate_sequence(seq, args.train_end));

    std::map<std::string, std::vector<double>> realized;
    for (const auto& seq : dataset.sequences) {
        std::vector<double> row;
        for (double h : horizons) {
            const auto& ts = seq.arrivals();
            row.push_back(static_cast<double>(
                std::upper_bound(ts.begin(), ts.end(), args.train_end + h) - ts.begin()));
        }
        realized[seq.item_id()] = std::move(row);
    }

    // Per-model predictions, item -> per-horizon row.
    std::map<std::string, std::map<std::string, std::vector<double>>> predictions;
    std::map<std::string, std::map<std::string, std::string>> exclusions;

    for (const auto& model : models) {
        auto& pred = predictions[model];
        auto& excl = exclusions[model];
        if (model == "rpp-prior") {
            rpp::CorpusFitOptions options;
            options.threads = threads;
            const auto fit = rpp::fit_corpus_with_prior(train, args.config, options);
            for (const auto& seq : train) {
                const auto& item = fit.per_item.at(seq.item_id());
                const auto terms = rpp::log_likelihood(seq, item.params, args.config);
                std::vector<double> row;
                bool ok = true;
                for (double h : horizons) {
                    const auto f = rpp::predict_bayes(seq, item.params, terms, *fit.prior,
                                                      args.config, args.train_end + h);
                    if (f.mean_divergent) {
                        ok = false;
                        break;
                    }
                    row.push_back(f.point);
                }
                if (ok) pred[seq.item_id()] = std::move(row);
                else excl[seq.item_id()] = "divergent posterior mean";
            }
        } else if (model == "rpp-mle") {
            for (const auto& seq : train) {
                if (seq.count() == 0) {
                    excl[seq.item_id()] = "no events in training window";
                    continue;
                }
                const auto fit = rpp::fit_item_mle(seq, args.config);
                std::vector<double> row;
                for (double h : horizons)
                    row.push_back(
                        rpp::predict_mle(seq, fit.params, args.config, args.train_end + h)
                            .point);
                pred[seq.item_id()] = std::move(row);
            }
        } else {  // sh, ar: period-aggregated series over the full window
            std::vector<rpp::CountSeries> series;
            series.reserve(dataset.sequences.size());
            for (const auto& seq : dataset.sequences)
                series.push_back(rpp::aggregate(seq, args.period));
            const int train_idx = as_period_index(args.train_end, args.period, "train window");
            for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
                const int target_idx =
                    as_period_index(args.train_end + horizons[hi], args.period, "horizon");
                const auto result =
                    model == "sh"
                        ? rpp::fit_predict_sh(series, train_idx, target_idx)
                        : rpp::fit_predict_ar(series, args.ar_order, train_idx, target_idx);
                for (const auto& [id, value] : result.predictions) {
                    auto it = pred.emplace(id, std::vector<double>()).first;
                    it->second.push_back(value);
                }
                for (const auto& [id, reason] : result.excluded)
                    excl.emplace(id, reason + " (horizon " + std::to_string(horizons[hi]) +
                                         ")");
            }
            // drop items that missed any horizon
            for (auto it = pred.begin(); it != pred.end();) {
                if (it->second.size() != horizons.size()) {
                    excl.emplace(it->first, "missing prediction at some horizon");
                    it = pred.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }

    // Models are compared on the items every selected model can score.
    std::vector<std::string> common;
    for (const auto& seq : dataset.sequences) {
        bool everywhere = true;
        for (const auto& model : models)
            everywhere = everywhere && predictions[model].count(seq.item_id()) > 0;
        if (everywhere) common.push_back(seq.item_id());
    }
    if (common.empty())
        throw rpp::ill_posed_error("no item is scorable by every selected model");

    json report = base_report("benchmark", std::nullopt);
    attach_input(report, "dataset", args.data_path);
    report["config"] = config_json(args.config);
    report["config"]["models"] = models;
    report["config"]["train_end"] = args.train_end;
    report["config"]["horizons"] = horizons;
    report["config"]["epsilon"] = args.epsilon;
    report["config"]["ar_order"] = args.ar_order;
    report["config"]["period"] = args.period;
    report["common_items"] = common.size();

    std::cout << "benchmark on " << common.size() << " common items, train_end="
              << args.train_end << "\n";
    std::cout << std::left << std::setw(12) << "model" << std::right << std::setw(10)
              << "<MAPE>";
    for (double h : horizons) std::cout << std::setw(9) << ("h=" + std::to_string((int)h));
    std::cout << "\n";

    json model_reports = json::object();
    for (const auto& model : models) {
        rpp::SweepInput input;
        input.horizons = horizons;
        for (const auto& id : common) {
            input.items.push_back(id);
            input.predicted.push_back(predictions[model][id]);
            input.realized.push_back(realized[id]);
        }
        const auto eval = rpp::horizon_sweep(input, args.epsilon);

        json per_horizon = json::array();
        std::cout << std::left << std::setw(12) << model << std::right << std::fixed
                  << std::setprecision(4) << std::setw(10) << eval.mean_mape;
        for (const auto& hm : eval.per_horizon) {
            per_horizon.push_back({{"horizon", hm.horizon},
                                   {"mape", hm.mape},
                                   {"accuracy", hm.accuracy},
                                   {"ks", hm.ks},
                                   {"evaluated", hm.evaluated},
                                   {"excluded", hm.excluded}});
            std::cout << std::setw(9) << hm.mape;
        }
        std::cout << "\n";
        model_reports[model] = {{"mean_mape", eval.mean_mape},
                                {"per_horizon", per_horizon},
                                {"excluded", exclusions[model]}};
    }
    report["benchmark"] = {{"models", model_reports}};
    report["wall_clock_sec"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_report(report, args.out_path);
    std::cout << "report: " << args.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reinforced Poisson process popularity modeling"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "generate a synthetic corpus");
    cmd_sim->add_option("--out", sim.out_path, "dataset output path")->required();
    cmd_sim->add_option("--truth", sim.truth_path, "ground-truth sidecar path");
    cmd_sim->add_option("--n", sim.n, "number of items")->check(CLI::NonNegativeNumber);
    cmd_sim->add_option("--t-end", sim.window_end, "observation window end");
    cmd_sim->add_option("--m", sim.m, "effective prior attention count");
    cmd_sim->add_option("--seed", sim.seed, "RNG seed (fresh one picked when omitted)");
    cmd_sim->add_option("--alpha", sim.alpha, "prior shape for fitness draws");
    cmd_sim->add_option("--beta", sim.beta, "prior rate for fitness draws");
    cmd_sim->add_option("--lambda", sim.fixed_lambda,
                        "fixed fitness for every item (disables the prior draw)");
    cmd_sim->add_option("--mu", sim.fixed_mu, "fixed mu (with --lambda)");
    cmd_sim->add_option("--sigma", sim.fixed_sigma, "fixed sigma (with --lambda)");
    cmd_sim->add_option("--mu-mean", sim.theta.mu_mean, "mu distribution mean");
    cmd_sim->add_option("--mu-sd", sim.theta.mu_sd, "mu distribution sd");
    cmd_sim->add_option("--sigma-min", sim.theta.sigma_min, "sigma lower bound");
    cmd_sim->add_option("--sigma-max", sim.theta.sigma_max, "sigma upper bound");

    FitArgs fit;
    auto* cmd_fit = app.add_subcommand("fit", "fit items (mle) or the corpus (prior)");
    cmd_fit->add_option("--data", fit.data_path, "dataset path")->required();
    cmd_fit->add_option("--out", fit.out_path, "report output path")->required();
    cmd_fit->add_option("--regime", fit.regime, "mle | prior");
    cmd_fit->add_option("--m", fit.config.m, "effective prior attention count");
    cmd_fit->add_option("--time-floor", fit.config.time_floor, "clamp floor for event times");
    cmd_fit->add_option("--grad-tol", fit.config.gradient_tolerance, "gradient tolerance");
    cmd_fit->add_option("--ll-tol", fit.config.corpus_ll_rel_tolerance,
                        "corpus log-lik relative tolerance");
    cmd_fit->add_option("--max-outer", fit.config.max_outer_iterations, "outer iteration cap");
    cmd_fit->add_option("--max-inner", fit.config.max_inner_iterations, "inner iteration cap");
    cmd_fit->add_option("--threads", fit.threads, "worker threads (or RPP_THREADS)");

    PredictArgs pred;
    auto* cmd_pred = app.add_subcommand("predict", "forecast fitted items at horizons");
    cmd_pred->add_option("--data", pred.data_path, "dataset path")->required();
    cmd_pred->add_option("--fit", pred.fit_path, "fit report path")->required();
    cmd_pred->add_option("--out", pred.out_path, "report output path")->required();
    cmd_pred->add_option("--horizons", pred.horizons_text,
                         "absolute times, e.g. 11,12,15 or 11-20")->required();

    BenchmarkArgs bench;
    auto* cmd_bench = app.add_subcommand("benchmark", "side-by-side model comparison");
    cmd_bench->add_option("--data", bench.data_path, "dataset path")->required();
    cmd_bench->add_option("--out", bench.out_path, "report output path")->required();
    cmd_bench->add_option("--models", bench.models_text, "comma list: rpp-prior,rpp-mle,sh,ar");
    cmd_bench->add_option("--train-end", bench.train_end, "training window end");
    cmd_bench->add_option("--horizons", bench.horizons_text,
                          "offsets past train-end, e.g. 1-10");
    cmd_bench->add_option("--epsilon", bench.epsilon, "accuracy tolerance");
    cmd_bench->add_option("--m", bench.config.m, "effective prior attention count");
    cmd_bench->add_option("--ar-order", bench.ar_order, "AR baseline order");
    cmd_bench->add_option("--period", bench.period, "aggregation period for baselines");
    cmd_bench->add_option("--threads", bench.threads, "worker threads (or RPP_THREADS)");

    CLI11_PARSE(app, argc, argv);

    if (sim.truth_path.empty()) sim.truth_path = sim.out_path + ".truth.json";

    try {
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_fit->parsed()) return run_fit(fit);
        if (cmd_pred->parsed()) return run_predict(pred);
        if (cmd_bench->parsed()) return run_benchmark(bench);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rpp::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const rpp::invalid_parameter_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rpp::horizon_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rpp::ill_posed_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const rpp::degenerate_exposure_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const rpp::degenerate_fit_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
