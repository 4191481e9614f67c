#include <doctest.h>

#include <cmath>
#include <cstring>
#include <future>
#include <limits>

#include "isotonic/quadrature.hpp"

using namespace isotonic::quadrature;

TEST_SUITE("quadrature") {

TEST_CASE("half-line Gaussian moments") {
    IntegrationSpec spec;
    const auto r1 = integrate([](double x) { return x * std::exp(-x * x); }, spec);
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r1.strategy == TailStrategy::transform);

    // <x> for the lowest state at gamma = 3/2: (4/sqrt(pi)) x^3 e^{-x^2}
    const auto r2 = integrate(
        [](double x) { return 4.0 / std::sqrt(M_PI) * x * x * x * std::exp(-x * x); },
        spec);
    CHECK(r2.value == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("full-line Gaussian") {
    IntegrationSpec spec;
    spec.domain = Domain::full_line;
    const auto r = integrate([](double x) { return std::exp(-x * x); }, spec);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("embedded rule is exact on polynomials of its design degree") {
    // single-panel results: degree 13 is exact for the embedded Gauss rule,
    // degree 22 for the Kronrod extension; tolerance is a few roundings
    auto poly = [](int degree) {
        return [degree](double x) {
            double v = 0.0;
            for (int j = degree; j >= 0; --j) v = v * x + (1.0 + 0.25 * j);
            return v;
        };
    };
    auto exact = [](int degree, double a, double b) {
        double v = 0.0;
        for (int j = 0; j <= degree; ++j) {
            v += (1.0 + 0.25 * j) / (j + 1.0) *
                 (std::pow(b, j + 1.0) - std::pow(a, j + 1.0));
        }
        return v;
    };
    for (int degree : {3, 7, 13, 22}) {
        const auto r = integrate_finite(poly(degree), 0.25, 1.75, 1e-6, 1e-6);
        CHECK(std::abs(r.value - exact(degree, 0.25, 1.75)) <
              8.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value));
        if (degree <= 13) {
            // the embedded Gauss rule agrees, so one panel suffices
            CHECK(r.evaluations == 15);
        }
    }
}

TEST_CASE("results are deterministic and thread-independent") {
    IntegrationSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    auto f = [](double x) { return std::sin(3.0 * x) * std::sin(3.0 * x) * std::exp(-x); };
    const auto a = integrate(f, spec);
    const auto b = integrate(f, spec);
    auto task = std::async(std::launch::async, [&] { return integrate(f, spec); });
    const auto c = task.get();
    CHECK(std::memcmp(&a.value, &b.value, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.value, &c.value, sizeof(double)) == 0);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("algebraic tail truncation honors the remainder budget") {
    IntegrationSpec spec;
    spec.abs_tol = 1e-8;
    spec.rel_tol = 1e-8;

    SUBCASE("p^-4 tail") {
        spec.tail_exponent_hint = 4.0;
        const auto r = integrate(
            [](double p) { return 1.0 / ((1.0 + p * p) * (1.0 + p * p)); }, spec);
        CHECK(r.strategy == TailStrategy::truncated);
        CHECK(std::abs(r.value - M_PI / 4.0) < 1e-8);
    }
    SUBCASE("p^-2 worst case") {
        // slowest tail the momentum route produces; the cutoff search has to
        // walk out to ~1e9 to meet the budget
        spec.tail_exponent_hint = 2.0;
        const auto r = integrate([](double p) { return 1.0 / (1.0 + p * p); }, spec);
        CHECK(r.strategy == TailStrategy::truncated);
        CHECK(std::abs(r.value - M_PI / 2.0) < 1e-8);
    }
    SUBCASE("full-line truncation") {
        spec.domain = Domain::full_line;
        spec.tail_exponent_hint = 4.0;
        const auto r = integrate(
            [](double p) { return 1.0 / ((1.0 + p * p) * (1.0 + p * p)); }, spec);
        CHECK(std::abs(r.value - M_PI / 2.0) < 1e-8);
    }
}

TEST_CASE("entropy integrand conventions") {
    int calls = 0;
    auto h = entropy_integrand([&calls](double x) {
        ++calls;
        if (x < 1.0) return 0.0;
        if (x < 2.0) return 1.0;
        if (x < 3.0) return std::exp(-1.0);
        if (x < 4.0) return 1e-310;  // below the 0 ln 0 cut
        return -0.25;
    });
    CHECK(h(0.5) == 0.0);
    CHECK(h(1.5) == 0.0);
    CHECK(h(2.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(h(3.5) == 0.0);
    CHECK_THROWS_AS(h(4.5), NegativeDensity);
    CHECK(calls == 5);
}

TEST_CASE("entropy of the Gaussian ground-state density") {
    // -int rho ln rho with rho = pi^{-1/2} e^{-x^2} equals (1 + ln pi)/2
    IntegrationSpec spec;
    spec.domain = Domain::full_line;
    auto h = entropy_integrand(
        [](double x) { return std::exp(-x * x) / std::sqrt(M_PI); });
    const auto r = integrate(h, spec);
    CHECK(r.value == doctest::Approx(0.5 * (1.0 + std::log(M_PI))).epsilon(1e-10));
}

TEST_CASE("non-finite integrands are reported with the abscissa") {
    try {
        integrate_finite([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0);
        FAIL("expected NonFiniteIntegrand");
    } catch (const NonFiniteIntegrand& e) {
        CHECK(e.abscissa() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("tolerance failures carry the best estimate") {
    try {
        integrate_finite([](double x) { return std::sin(50.0 * x); }, 0.0, 1.0,
                         1e-14, 1e-14, 1);
        FAIL("expected ToleranceNotMet");
    } catch (const ToleranceNotMet& e) {
        const double want = (1.0 - std::cos(50.0)) / 50.0;
        CHECK(std::abs(e.best().value - want) < 0.2);
        CHECK(e.best().error_estimate > 1e-14);
    }
}

TEST_CASE("invalid specs are rejected") {
    IntegrationSpec spec;
    spec.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, spec),
                    std::invalid_argument);
    IntegrationSpec bad_hint;
    bad_hint.tail_exponent_hint = 0.5;  // divergent tail
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, bad_hint),
                    std::invalid_argument);
}

}  // TEST_SUITE
