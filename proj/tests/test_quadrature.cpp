#include "hcm/quadrature.hpp"
#include "hcm/errors.hpp"

#include <doctest.h>

#include <cmath>

TEST_CASE("polynomials integrate to machine accuracy") {
    const auto r = hcm::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-14);
    const auto r7 = hcm::integrate([](double x) { return 8.0 * std::pow(x, 7); }, 0.0, 2.0);
    CHECK(std::abs(r7.value - 256.0) < 1e-10);
}

TEST_CASE("smooth transcendental integrand") {
    const auto r = hcm::integrate([](double x) { return std::sin(x); }, 0.0,
                                  3.141592653589793);
    CHECK(std::abs(r.value - 2.0) < 1e-12);
}

TEST_CASE("oscillatory integrand with cancellation needs the absolute tolerance") {
    const auto r = hcm::integrate([](double x) { return std::sin(x); }, 0.0,
                                  10.0 * 3.141592653589793, 1e-8, 1e-12);
    CHECK(std::abs(r.value) < 1e-9);
}

TEST_CASE("endpoint square-root zero (the mode-shape case)") {
    const auto r = hcm::integrate([](double x) { return std::sqrt(1.0 - x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("integrable endpoint singularity converges without endpoint evaluation") {
    const auto r = hcm::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 2.0) < 1e-6);
}

TEST_CASE("divergent integrand is reported, not silently returned") {
    CHECK_THROWS_AS(hcm::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0),
                    hcm::NumericalError);
}

TEST_CASE("interval and tolerance validation") {
    CHECK_THROWS_AS(hcm::integrate([](double) { return 1.0; }, 1.0, 1.0),
                    hcm::ValidationError);
    CHECK_THROWS_AS(hcm::integrate([](double) { return 1.0; }, 2.0, 1.0),
                    hcm::ValidationError);
    CHECK_THROWS_AS(hcm::integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0, 0.0),
                    hcm::ValidationError);
}

TEST_CASE("error estimate bounds the true error on smooth problems") {
    const auto r = hcm::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) <= r.error_estimate + 1e-14);
    CHECK(r.evaluations >= 15);
}
