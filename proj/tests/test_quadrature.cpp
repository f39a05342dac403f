#include <cmath>
#include <vector>

#include <doctest.h>

#include "svip/quadrature.hpp"

namespace quad = svip::quadrature;

TEST_CASE("polynomials are integrated to machine accuracy") {
    const double v = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const double w = quad::integrate([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
    CHECK(w == doctest::Approx(9.0 - 3.0 + 3.0).epsilon(1e-14));
}

TEST_CASE("smooth transcendental integrand") {
    const double v = quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity converges") {
    // 1/sqrt(x) on (0, 1] integrates to 2; the adaptive pass has to pile
    // intervals against the left endpoint, so the tolerance is looser.
    const double v = quad::integrate([](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; },
                                     0.0, 1.0);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("gaussian over a wide window") {
    const auto f = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); };
    const double v = quad::integrate(f, -40.0, 40.0);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("segment seeding keeps narrow bumps from being stepped over") {
    // A spike of width ~1e-4 at x = 5 inside [0, 1000].  A single top-level
    // G-K application sees zero; seeding a breakpoint near the bump fixes it.
    const double mu = 5.0, sigma = 1e-4;
    const auto bump = [&](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
    };
    const std::vector<double> pts{0.0, mu - 50 * sigma, mu + 50 * sigma, 1000.0};
    const double v = quad::integrate_segments(bump, pts);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate and reversed intervals integrate to zero") {
    CHECK(quad::integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
    CHECK(quad::integrate([](double x) { return x; }, 3.0, 1.0) == 0.0);
}
