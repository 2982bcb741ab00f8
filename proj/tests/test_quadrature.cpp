#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "yano/quadrature.hpp"

using namespace yano;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("smooth integrands to tight tolerance") {
    QuadratureConfig cfg;
    auto v = integrate<long double>([](long double t) { return std::sin(t); },
                                    0.0L, (long double)M_PI, cfg);
    CHECK_THAT((double)v, WithinAbs(2.0, 1e-13));

    auto w = integrate<long double>([](long double t) { return std::exp(-t * t); },
                                    0.0L, 1.0L, cfg);
    CHECK_THAT((double)w, WithinRel(0.746824132812427025399, 1e-13));
}

TEST_CASE("integrable endpoint singularity") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-11;
    auto v = integrate<long double>(
        [](long double t) { return 1.0L / std::sqrt(t); }, 0.0L, 1.0L, cfg);
    CHECK_THAT((double)v, WithinAbs(2.0, 1e-9));
}

TEST_CASE("subdivision budget failure is reported") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 4;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-15;
    CHECK_THROWS_AS(integrate<long double>(
                        [](long double t) { return 1.0L / std::sqrt(std::abs(t - 0.31L)); },
                        0.0L, 1.0L, cfg),
                    QuadratureFailure);
}

TEST_CASE("complex-valued integrand") {
    QuadratureConfig cfg;
    auto v = integrate<std::complex<long double>>(
        [](long double t) {
            return std::complex<long double>(std::cos(t), std::sin(t));
        },
        0.0L, 1.0L, cfg);
    CHECK_THAT((double)v.real(), WithinAbs(std::sin(1.0), 1e-13));
    CHECK_THAT((double)v.imag(), WithinAbs(1.0 - std::cos(1.0), 1e-13));
}

TEST_CASE("determinism: identical bits across repeated runs") {
    QuadratureConfig cfg;
    auto f = [](long double t) { return std::cos(13 * t) / (1 + t); };
    long double a = integrate<long double>(f, 0.0L, 1.0L, cfg);
    long double b = integrate<long double>(f, 0.0L, 1.0L, cfg);
    CHECK(std::memcmp(&a, &b, sizeof(long double)) == 0);
}

TEST_CASE("quad-precision backend") {
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-25;
    cfg.rel_tol = 1e-25;
    auto v = integrate<Quad>([](const Quad& t) { return 1 / (1 + t * t); },
                             Quad(0), Quad(1), cfg);
    Quad expected = pi_value<Quad>() / 4;
    CHECK(to_double(r_abs(Quad(v - expected))) < 1e-24);
}
