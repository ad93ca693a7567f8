#include "rpp/model.hpp"

#include <cmath>

#include "rpp/special_functions.hpp"

namespace rpp {

double relaxation(double t, const ItemParams& params) {
    params.validate();
    if (!(t > 0.0)) throw domain_error("relaxation requires t > 0");
    const double tau = (std::log(t) - params.mu) / params.sigma;
    return norm_pdf(tau) / (params.sigma * t);
}

double relaxation_integral(double t, const ItemParams& params) {
    params.validate();
    if (t < 0.0) throw domain_error("relaxation_integral requires t >= 0");
    if (t == 0.0) return 0.0;
    return norm_cdf((std::log(t) - params.mu) / params.sigma);
}

double rate(double t, int count_so_far, const ItemParams& params, const ModelConfig& config) {
    config.validate();
    if (count_so_far < 0) throw invalid_parameter_error("count_so_far must be >= 0");
    return params.fitness * relaxation(t, params) * (config.m + count_so_far);
}

}  // namespace rpp
