#pragma once

#include "rpp/types.hpp"

namespace rpp {

// Log-normal relaxation density
//   f(t; mu, sigma) = 1 / (sqrt(2 pi) sigma t) * exp(-(ln t - mu)^2 / (2 sigma^2)),
// the aging profile of attention. Strictly positive for t > 0.
double relaxation(double t, const ItemParams& params);

// Cumulative relaxation mass F(t) = Phi((ln t - mu) / sigma), the exact
// antiderivative of relaxation. F(0) = 0, monotone, sup F = 1.
double relaxation_integral(double t, const ItemParams& params);

// Process rate fitness * f(t) * (m + count_so_far).
double rate(double t, int count_so_far, const ItemParams& params, const ModelConfig& config);

}  // namespace rpp
