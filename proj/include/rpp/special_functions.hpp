#pragma once

namespace rpp {

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF, computed through erfc so both tails keep full
// relative precision (absolute accuracy better than 1e-14).
double norm_cdf(double x);

// Inverse standard normal CDF. Wichura's AS241 rational approximation
// followed by one Newton step; absolute accuracy well below 1e-10 over
// p in (0, 1). Returns -inf/+inf at p = 0/1.
double norm_quantile(double p);

// Digamma psi_0(x) for x > 0 via upward recurrence into the asymptotic
// region, then the Bernoulli series; absolute accuracy ~1e-12.
double digamma(double x);

// Trigamma psi_1(x) for x > 0, same recurrence + series scheme.
double trigamma(double x);

}  // namespace rpp
