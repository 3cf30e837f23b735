#include "seasvol/charfn.hpp"
#include "seasvol/correlation.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <thread>
#include <vector>

using namespace seasvol;

namespace {

const double kT0 = 7.0 / 12.0;
constexpr Complex kI{0.0, 1.0};

VolFactor sinusoid_factor() {
    return {1.0, 0.8, 1.2, -0.25, 0.10, {SeasonalPattern::Sinusoid, 0.25, 0.15, kT0}};
}

ModelConfig one_factor_config(const VolFactor& factor) {
    return ModelConfig({factor}, 0.0, {{0.0, 100.0}});
}

std::vector<ModelConfig> table1_configs() {
    std::vector<ModelConfig> out;
    const std::vector<SeasonalitySpec> specs{
        {SeasonalPattern::Sinusoid, 0.25, 0.15, kT0},   {SeasonalPattern::ExpSinusoid, 0.20, 0.68, kT0},
        {SeasonalPattern::Sawtooth, 0.10, 0.30, kT0},   {SeasonalPattern::Triangle, 0.10, 0.60, kT0},
        {SeasonalPattern::Spiked, 0.10, 0.30, kT0},
    };
    for (const auto& spec : specs)
        out.push_back(one_factor_config({1.0, 0.8, 1.2, -0.25, 0.10, spec}));
    return out;
}

// Closed-form Heston CF of the log-return of a driftless (martingale) asset,
// in the branch-stable formulation. Independent oracle for the lambda -> 0,
// constant-theta limit of the model.
Complex heston_cf(Complex u, double kappa, double theta, double sigma, double rho, double v0,
                  double T) {
    const Complex iu = kI * u;
    const Complex b = kappa - rho * sigma * iu;
    Complex d = std::sqrt(b * b + sigma * sigma * (iu + u * u));
    if (d.real() < 0.0) d = -d;
    const Complex g = (b - d) / (b + d);
    const Complex e = std::exp(-d * T);
    const Complex c_term =
        kappa * theta / (sigma * sigma) * ((b - d) * T - 2.0 * std::log((1.0 - g * e) / (1.0 - g)));
    const Complex d_term = (b - d) / (sigma * sigma) * (1.0 - e) / (1.0 - g * e);
    return std::exp(c_term + d_term * v0);
}

}  // namespace

TEST_CASE("f1, f2 and q at hand-checkable points") {
    const VolFactor factor = sinusoid_factor();
    CHECK(f1(factor, {0, 0}, {0, 0}, 0.3, 1.0, 2.0) == Complex{0.0, 0.0});
    CHECK(q_coeff(factor, {0, 0}, {0, 0}, 0.3, 1.0, 2.0) == Complex{0.0, 0.0});

    // u = (1, 0), lambda = 1, T1 = 1, t = 0 -> e^{-1}
    CHECK(std::abs(f1(factor, {1, 0}, {0, 0}, 0.0, 1.0, 2.0) - std::exp(-1.0)) < 1e-15);
    CHECK(std::abs(f2(factor, {1, 0}, {0, 0}, 0.0, 1.0, 2.0) - std::exp(-2.0)) < 1e-15);

    // rho = 0 drops the first term of q
    VolFactor uncorrelated{1.0, 0.8, 1.2, 0.0, 0.10, factor.seasonality};
    const Complex v1 = f1(uncorrelated, {1.0, 0.5}, {0.25, 0}, 0.3, 1.0, 2.0);
    const Complex v2 = f2(uncorrelated, {1.0, 0.5}, {0.25, 0}, 0.3, 1.0, 2.0);
    const Complex q = q_coeff(uncorrelated, {1.0, 0.5}, {0.25, 0}, 0.3, 1.0, 2.0);
    CHECK(std::abs(q - (-0.5 * v1 * v1 - 0.5 * kI * v2)) < 1e-15);

    // generic factor at u = (-i, 0): recompute the three-term formula
    const Complex u1{0.0, -1.0};
    const Complex w1 = f1(factor, u1, {0, 0}, 0.3, 1.0, 2.0);
    const Complex w2 = f2(factor, u1, {0, 0}, 0.3, 1.0, 2.0);
    const Complex expected = kI * factor.rho * (factor.kappa - factor.lambda) / factor.sigma * w1 -
                             0.5 * (1.0 - factor.rho * factor.rho) * w1 * w1 - 0.5 * kI * w2;
    CHECK(std::abs(q_coeff(factor, u1, {0, 0}, 0.3, 1.0, 2.0) - expected) < 1e-15);

    CHECK_THROWS_AS(
        q_coeff({1.0, 0.8, 0.0, 0.0, 0.1, factor.seasonality}, {1, 0}, {0, 0}, 0.0, 1.0, 2.0),
        ConfigError);
}

TEST_CASE("riccati system at u = 0 stays identically zero") {
    const FactorOdeSolution sol = solve_factor_odes(sinusoid_factor(), {0, 0}, {0, 0}, 1.0, 1.0, 1.5);
    CHECK(std::abs(sol.A_at_0) == 0.0);
    CHECK(std::abs(sol.B_at_0) == 0.0);
    CHECK(std::abs(sol.A_terminal) == 0.0);
}

TEST_CASE("constant-theta B equals kappa theta times the integral of A") {
    VolFactor factor{1.0, 0.8, 1.2, -0.25, 0.10, SeasonalitySpec::constant(0.2)};
    const Complex u{1.3, 0.0};
    const double T = 0.8;
    const FactorOdeSolution sol = solve_factor_odes(factor, u, {0, 0}, T, T, T + 0.5);

    auto a_real = [&](double t) { return riccati_a(factor, u, {0, 0}, t, T, T, T + 0.5).real(); };
    auto a_imag = [&](double t) { return riccati_a(factor, u, {0, 0}, t, T, T, T + 0.5).imag(); };
    const double int_re = integrate(a_real, 0.0, T, 1e-11, 1e-11).value;
    const double int_im = integrate(a_imag, 0.0, T, 1e-11, 1e-11).value;
    const Complex expected = factor.kappa * 0.2 * Complex{int_re, int_im};
    CHECK(std::abs(sol.B_at_0 - expected) < 1e-8);
}

TEST_CASE("rho = 0 keeps Re A(0,T) nonpositive for real u") {
    VolFactor factor{1.0, 0.8, 1.2, 0.0, 0.10, {SeasonalPattern::Sinusoid, 0.25, 0.15, kT0}};
    for (double u = 0.25; u <= 32.0; u *= 2.0) {
        const FactorOdeSolution sol = solve_factor_odes(factor, {u, 0.0}, {0, 0}, 1.0, 1.0, 1.5);
        CHECK(sol.A_at_0.real() <= 1e-12);
    }
}

TEST_CASE("joint CF is exactly 1 at u = 0 and Hermitian in real u") {
    for (const ModelConfig& config : table1_configs()) {
        CHECK(joint_cf(config, {{0, 0}, {0, 0}, 0.5, 0.5, 1.0}) == Complex{1.0, 0.0});
        for (double u1 = -2.0; u1 <= 2.0; u1 += 1.0)
            for (double u2 = -1.0; u2 <= 1.0; u2 += 0.5) {
                const Complex plus = joint_cf(config, {{u1, 0}, {u2, 0}, 0.5, 0.5, 1.0});
                const Complex minus = joint_cf(config, {{-u1, 0}, {-u2, 0}, 0.5, 0.5, 1.0});
                CHECK(std::abs(plus - std::conj(minus)) < 1e-12);
            }
    }
}

TEST_CASE("CF modulus stays within 1 on a real grid") {
    const ModelConfig config = one_factor_config(sinusoid_factor());
    for (double u : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0})
        CHECK(std::abs(single_cf(config, {u, 0.0}, 0.75, 1.0)) <= 1.0 + 1e-10);
}

TEST_CASE("martingale property of the sinusoid set") {
    const ModelConfig config = one_factor_config(sinusoid_factor());
    for (double T : {0.25, 1.0}) {
        const Complex value = single_cf(config, -kI, T, T);
        CHECK(std::abs(value - 1.0) < 1e-6);
    }
}

TEST_CASE("lambda -> 0 constant-theta limit recovers the Heston CF") {
    // tiny lambda stands in for zero, which the factor invariant excludes
    VolFactor factor{1e-12, 0.8, 1.2, -0.25, 0.10, SeasonalitySpec::constant(0.18)};
    const ModelConfig config = one_factor_config(factor);
    const double T = 0.9;
    for (double u : {-3.0, -1.0, -0.4, 0.4, 1.0, 3.0, 7.0}) {
        const Complex ours = single_cf(config, {u, 0.0}, T, T);
        const Complex oracle = heston_cf({u, 0.0}, 0.8, 0.18, 1.2, -0.25, 0.10, T);
        CHECK(std::abs(ours - oracle) < 1e-8);
    }
}

TEST_CASE("independent factors multiply") {
    const VolFactor f1{2.0, 0.8, 1.2, -0.25, 0.10, {SeasonalPattern::Sinusoid, 0.25, 0.15, kT0}};
    const VolFactor f2{0.5, 0.8, 0.9, -0.25, 0.04, {SeasonalPattern::Sinusoid, 0.10, 0.0, kT0}};
    const ModelConfig both({f1, f2}, 0.0, {{0.0, 100.0}});
    const ModelConfig only1 = one_factor_config(f1);
    const ModelConfig only2 = one_factor_config(f2);

    const CfArgs args{{0.7, 0.0}, {-0.3, 0.0}, 0.33, 0.33, 0.83};
    const Complex joint = joint_cf(both, args);
    const Complex product = joint_cf(only1, args) * joint_cf(only2, args);
    CHECK(std::abs(joint - product) < 1e-12);
}

TEST_CASE("a vanishing second factor reduces to the one-factor CF") {
    const VolFactor main_factor = sinusoid_factor();
    const VolFactor ghost{0.5, 0.8, 0.9, -0.25, 1e-12, SeasonalitySpec::constant(1e-12)};
    const ModelConfig two({main_factor, ghost}, 0.0, {{0.0, 100.0}});
    const ModelConfig one = one_factor_config(main_factor);
    const CfArgs args{{1.0, 0.0}, {0.5, 0.0}, 0.5, 0.5, 1.0};
    CHECK(std::abs(joint_cf(two, args) - joint_cf(one, args)) < 1e-6);
}

TEST_CASE("sigma -> 0 continuity towards the Gaussian CF") {
    const SeasonalitySpec seasonality{SeasonalPattern::Sinusoid, 0.25, 0.15, kT0};
    const VolFactor nearly{1.0, 0.8, 1e-4, -0.25, 0.10, seasonality};
    const VolFactor exactly{1.0, 0.8, 0.0, -0.25, 0.10, seasonality};
    const ModelConfig approx = one_factor_config(nearly);
    const ModelConfig gaussian = one_factor_config(exactly);
    for (double u : {-2.0, -0.5, 0.5, 1.0, 2.0}) {
        const CfArgs args{{u, 0.0}, {0.5 * u, 0.0}, 0.5, 0.5, 1.0};
        CHECK(std::abs(joint_cf(approx, args) - deterministic_cf(gaussian, args)) < 1e-3);
    }
}

TEST_CASE("deterministic covariance against its analytic constant-variance value") {
    // theta == v0 makes the variance path constant
    const VolFactor factor{1.0, 0.8, 0.0, 0.0, 0.10, SeasonalitySpec::constant(0.10)};
    const double T = 0.5, T1 = 1.0;
    const double expected =
        0.10 * (std::exp(-2.0 * (T1 - T)) - std::exp(-2.0 * T1)) / 2.0;
    CHECK(deterministic_covariance(factor, T, T1, T1) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("deterministic covariance against a Simpson oracle for seasonal theta") {
    const VolFactor factor{2.0, 1.0, 0.0, 0.0, 0.10, {SeasonalPattern::Sinusoid, 0.10, 0.09, 0.0}};
    const double T = 0.75, T1 = 1.0, T2 = 1.5;
    // composite Simpson over the closed-form variance path
    const long panels = 20000;
    const double h = T / panels;
    auto integrand = [&](double t) {
        return std::exp(-factor.lambda * (T1 - t)) * std::exp(-factor.lambda * (T2 - t)) *
               deterministic_variance(factor, t);
    };
    double sum = integrand(0.0) + integrand(T);
    for (long i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
    const double oracle = sum * h / 3.0;
    CHECK(std::abs(deterministic_covariance(factor, T, T1, T2) - oracle) <=
          1e-10 * (1.0 + std::abs(oracle)));
}

TEST_CASE("deterministic CF basics") {
    const VolFactor factor{1.0, 0.8, 0.0, 0.0, 0.10, {SeasonalPattern::Sinusoid, 0.25, 0.15, kT0}};
    const ModelConfig config = one_factor_config(factor);
    CHECK(deterministic_cf(config, {{0, 0}, {0, 0}, 0.5, 0.5, 1.0}) == Complex{1.0, 0.0});
    // martingale in the Gaussian limit as well
    CHECK(std::abs(deterministic_cf(config, {-kI, {0, 0}, 0.5, 0.5, 1.0}) - 1.0) < 1e-10);
    CHECK_THROWS_AS(deterministic_cf(one_factor_config(sinusoid_factor()),
                                     CfArgs{{1, 0}, {0, 0}, 0.5, 0.5, 1.0}),
                    ConfigError);
}

TEST_CASE("log-price CF phase factors") {
    const ModelConfig config = one_factor_config(sinusoid_factor());
    const CfArgs cancel{{1.0, 0.0}, {-1.0, 0.0}, 0.5, 0.5, 1.0};
    CHECK(std::abs(log_price_cf(config, cancel) - joint_cf(config, cancel)) < 1e-13);

    const CfArgs single{{1.0, 0.0}, {0.0, 0.0}, 0.5, 0.5, 1.0};
    const Complex expected = std::exp(kI * std::log(100.0)) * joint_cf(config, single);
    CHECK(std::abs(log_price_cf(config, single) - expected) < 1e-13);
}

TEST_CASE("far outside the analytic strip the Riccati solution blows up") {
    const ModelConfig config = one_factor_config(sinusoid_factor());
    CHECK_THROWS_AS(single_cf(config, {0.0, -200.0}, 2.0, 2.0), NumericalError);
}

TEST_CASE("theta cache serves identical values under concurrency") {
    const ModelConfig config = one_factor_config(sinusoid_factor());
    const CfArgs args{{0.9, 0.0}, {0.4, 0.0}, 0.7, 0.7, 1.2};
    const Complex reference = joint_cf(config, args);
    CHECK(theta_cache_size() >= 1);

    std::vector<Complex> results(8);
    std::vector<std::thread> pool;
    for (int i = 0; i < 8; ++i)
        pool.emplace_back([&, i] { results[i] = joint_cf(config, args); });
    for (auto& t : pool) t.join();
    for (const Complex& r : results) CHECK(r == reference);
}

TEST_CASE("cf args validation") {
    CHECK_THROWS_AS(CfArgs({1, 0}, {0, 0}, 0.0, 1.0, 2.0), ConfigError);
    CHECK_THROWS_AS(CfArgs({1, 0}, {0, 0}, 1.5, 1.0, 2.0), ConfigError);
}
