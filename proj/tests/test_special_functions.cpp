#include <doctest.h>

#include <cmath>

#include "rpp/rng.hpp"
#include "rpp/special_functions.hpp"
#include "support/oracles.hpp"

using namespace rpp;

TEST_CASE("norm_cdf matches quadrature of the density") {
    for (double x : {-3.0, -1.0, -0.3, 0.0, 0.5, 1.7, 3.0}) {
        const double tail = oracle::integrate([](double u) { return norm_pdf(u); }, -40.0, x,
                                              1e-14);
        CHECK(norm_cdf(x) == doctest::Approx(tail).epsilon(1e-10));
    }
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    // deep tails keep relative precision through erfc
    CHECK(norm_cdf(-37.0) > 0.0);
    CHECK(norm_cdf(-5.0) == doctest::Approx(2.866515718791939e-07).epsilon(1e-12));
    CHECK(norm_cdf(-10.0) == doctest::Approx(7.619853024160526e-24).epsilon(1e-12));
}

TEST_CASE("norm_quantile inverts norm_cdf to 1e-10") {
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.7, 0.975, 1.0 - 1e-9}) {
        const double x = norm_quantile(p);
        CHECK(norm_cdf(x) == doctest::Approx(p).epsilon(1e-10));
    }
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(-6.0, 6.0);
        CHECK(norm_quantile(norm_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
    }
    CHECK(std::isinf(norm_quantile(0.0)));
    CHECK(std::isinf(norm_quantile(1.0)));
    CHECK_THROWS_AS(norm_quantile(-0.1), domain_error);
}

TEST_CASE("digamma reference values and recurrence") {
    const double euler = 0.57721566490153286061;
    CHECK(digamma(1.0) == doctest::Approx(-euler).epsilon(1e-12));
    CHECK(digamma(0.5) == doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - euler).epsilon(1e-12));
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(0.05, 50.0);
        CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-11));
    }
    // digamma is the derivative of lgamma
    for (double x : {0.7, 1.3, 4.2, 17.0, 123.0}) {
        const double fd =
            oracle::central_diff([](double u) { return std::lgamma(u); }, x, 1e-6);
        CHECK(digamma(x) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK_THROWS_AS(digamma(0.0), domain_error);
}

TEST_CASE("trigamma reference values and recurrence") {
    const double pi = 3.14159265358979323846;
    CHECK(trigamma(1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-12));
    CHECK(trigamma(0.5) == doctest::Approx(pi * pi / 2.0).epsilon(1e-12));
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(0.05, 50.0);
        CHECK(trigamma(x + 1.0) ==
              doctest::Approx(trigamma(x) - 1.0 / (x * x)).epsilon(1e-11));
    }
    for (double x : {0.8, 2.5, 9.0, 60.0}) {
        const double fd = oracle::central_diff([](double u) { return digamma(u); }, x, 1e-6);
        CHECK(trigamma(x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("rng gamma moments and determinism") {
    Rng a(99), b(99);
    for (int i = 0; i < 32; ++i) CHECK(a.raw() == b.raw());

    Rng rng(123);
    const int n = 200000;
    std::vector<double> draws(n);
    for (int i = 0; i < n; ++i) draws[i] = rng.gamma(4.0, 4.0);
    const auto mv = oracle::sample_moments(draws);
    // gamma(4, 4): mean 1, variance 1/4
    CHECK(mv.mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(mv.variance == doctest::Approx(0.25).epsilon(0.03));

    Rng rng2(77);
    std::vector<double> small(n);
    for (int i = 0; i < n; ++i) small[i] = rng2.gamma(0.4, 2.0);
    const auto mv2 = oracle::sample_moments(small);
    CHECK(mv2.mean == doctest::Approx(0.2).epsilon(0.02));
    CHECK(mv2.variance == doctest::Approx(0.1).epsilon(0.03));
}

TEST_CASE("derived streams differ and are stable") {
    CHECK(derive_stream(42, 0) != derive_stream(42, 1));
    CHECK(derive_stream(42, 0) != derive_stream(43, 0));
    CHECK(derive_stream(42, 7) == derive_stream(42, 7));
}
