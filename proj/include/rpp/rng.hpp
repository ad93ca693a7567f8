#pragma once

#include <cstdint>
#include <random>

namespace rpp {

// Deterministic random source. All draws are derived from raw mt19937_64
// output (the engine is fully specified by the standard), so sequences are
// identical across platforms and standard-library implementations.
// Parallel work derives independent streams with derive_stream, never by
// sharing or splitting an engine.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0, 1); midpoints of 2^53 equal cells.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via the inverse CDF; exact given the quantile.
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential();

    // Gamma with given shape, rate parameterization (mean shape/rate);
    // Marsaglia-Tsang squeeze with the boost for shape < 1.
    double gamma(double shape, double rate);

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

// Stream k of a master seed: splitmix64 of seed advanced k+1 times. Distinct
// k give statistically independent engines, and the mapping is frozen so
// outputs are reproducible across versions and worker counts.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t k);

}  // namespace rpp
