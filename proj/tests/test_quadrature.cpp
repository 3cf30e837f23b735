#include "seasvol/errors.hpp"
#include "seasvol/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace seasvol;

TEST_CASE("gauss-kronrod core rule is exact on low-degree polynomials") {
    auto cubic = [](double x) { return 3.0 * x * x * x - x + 2.0; };
    const QuadratureResult r = gauss_kronrod_15(cubic, -1.0, 2.0);
    CHECK(r.value == doctest::Approx(3.0 / 4.0 * (16.0 - 1.0) - 1.5 + 6.0).epsilon(1e-14));
}

TEST_CASE("adaptive integration of a smooth oscillatory integrand") {
    // int_0^10 cos(x) dx = sin(10)
    const QuadratureResult r = integrate([](double x) { return std::cos(x); }, 0.0, 10.0);
    CHECK(std::abs(r.value - std::sin(10.0)) < 1e-12);
    CHECK(r.error_estimate < 1e-10);
}

TEST_CASE("breakpoints let the rule handle a jump exactly") {
    auto step = [](double x) { return x < 1.0 ? 1.0 : 3.0; };
    const QuadratureResult r = integrate_with_breakpoints(step, 0.0, 2.0, {1.0}, 1e-13, 1e-13);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("semi-infinite integration of a decaying oscillation") {
    // int_0^inf e^{-x} cos(x) dx = 1/2
    const QuadratureResult r =
        integrate_semi_infinite([](double x) { return std::exp(-x) * std::cos(x); });
    CHECK(std::abs(r.value - 0.5) < 1e-10);
}

TEST_CASE("non-convergence reports the achieved tolerance") {
    // |x - 0.3|^{-1/2} is integrable but hopeless at machine tolerance with
    // few intervals
    auto singular = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
    CHECK_THROWS_AS(integrate(singular, 0.0, 1.0, 1e-14, 1e-14, 8), NumericalError);
    try {
        integrate(singular, 0.0, 1.0, 1e-14, 1e-14, 8);
    } catch (const NumericalError& e) {
        CHECK(e.achieved_tolerance > 0.0);
    }
}

TEST_CASE("empty interval integrates to zero") {
    CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
}
