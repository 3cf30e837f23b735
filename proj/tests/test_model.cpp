#include "seasvol/errors.hpp"
#include "seasvol/model.hpp"

#include <doctest.h>

#include <string>

using namespace seasvol;

namespace {

VolFactor table1_sinusoid_factor() {
    return {1.0, 0.8, 1.2, -0.25, 0.10, {SeasonalPattern::Sinusoid, 0.25, 0.15, 7.0 / 12.0}};
}

}  // namespace

TEST_CASE("feller check flags the illustration parameters as violated") {
    const FellerResult result = feller_check(table1_sinusoid_factor());
    CHECK_FALSE(result.strict_positive);
    CHECK(result.margin == doctest::Approx(0.16 - 1.44).epsilon(1e-12));
}

TEST_CASE("feller check passes for sigma = 0 and for a comfortable margin") {
    VolFactor deterministic{1.0, 0.8, 0.0, 0.0, 0.10,
                            {SeasonalPattern::Sinusoid, 0.25, 0.15, 0.0}};
    CHECK(feller_check(deterministic).strict_positive);

    VolFactor comfortable{1.0, 1.0, 0.4, -0.25, 0.10,
                          {SeasonalPattern::Sinusoid, 0.25, 0.15, 0.0}};
    const FellerResult result = feller_check(comfortable);
    CHECK(result.strict_positive);
    CHECK(result.margin == doctest::Approx(0.20 - 0.16).epsilon(1e-12));
}

TEST_CASE("factor construction names the offending field") {
    auto spec = SeasonalitySpec{SeasonalPattern::Sinusoid, 0.25, 0.15, 0.0};
    try {
        VolFactor bad{1.0, 0.8, 1.2, -1.25, 0.10, spec};
        FAIL("rho = -1.25 must be rejected");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("rho") != std::string::npos);
    }
    CHECK_THROWS_AS((VolFactor{0.0, 0.8, 1.2, 0.0, 0.10, spec}), ConfigError);
    CHECK_THROWS_AS((VolFactor{1.0, -0.8, 1.2, 0.0, 0.10, spec}), ConfigError);
    CHECK_THROWS_AS((VolFactor{1.0, 0.8, -1.2, 0.0, 0.10, spec}), ConfigError);
    CHECK_THROWS_AS((VolFactor{1.0, 0.8, 1.2, 0.0, 0.0, spec}), ConfigError);
}

TEST_CASE("initial price interpolates the listed curve") {
    const ModelConfig flat({table1_sinusoid_factor()}, 0.0, {{0.0, 100.0}});
    CHECK(initial_price(flat, 0.83) == 100.0);
    CHECK(initial_price(flat, 5.0) == 100.0);

    const ModelConfig sloped({table1_sinusoid_factor()}, 0.0, {{1.0, 90.0}, {2.0, 110.0}});
    CHECK(initial_price(sloped, 1.5) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(initial_price(sloped, 2.0) == 110.0);
    CHECK(initial_price(sloped, 1.0) == 90.0);
    CHECK_THROWS_AS(initial_price(sloped, 2.5), ConfigError);
    CHECK_THROWS_AS(initial_price(sloped, 0.5), ConfigError);
}

TEST_CASE("model construction validates the curve") {
    const std::vector<VolFactor> factors{table1_sinusoid_factor()};
    CHECK_THROWS_AS(ModelConfig(factors, 0.0, {}), ConfigError);
    CHECK_THROWS_AS(ModelConfig(factors, 0.0, {{1.0, 100.0}, {1.0, 101.0}}), ConfigError);
    CHECK_THROWS_AS(ModelConfig(factors, 0.0, {{1.0, -5.0}}), ConfigError);
    CHECK_THROWS_AS(ModelConfig({}, 0.0, {{1.0, 100.0}}), ConfigError);
}
