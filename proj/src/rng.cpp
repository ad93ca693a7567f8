#include "rpp/rng.hpp"

#include <cmath>

#include "rpp/special_functions.hpp"
#include "rpp/types.hpp"

namespace rpp {

double Rng::normal() {
    return norm_quantile(uniform());
}

double Rng::exponential() {
    return -std::log(uniform());
}

double Rng::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw invalid_parameter_error("gamma draw requires shape > 0 and rate > 0");
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0, rate);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v / rate;
    }
}

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t k) {
    // k-th output of splitmix64 seeded at master_seed.
    std::uint64_t s = master_seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    s = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL;
    s = (s ^ (s >> 27)) * 0x94D049BB133111EBULL;
    return s ^ (s >> 31);
}

}  // namespace rpp
