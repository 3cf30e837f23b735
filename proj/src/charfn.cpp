#include "seasvol/charfn.hpp"
#include "seasvol/correlation.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/ode.hpp"
#include "seasvol/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace seasvol {

namespace {

constexpr Complex kI{0.0, 1.0};

// theta_hat depends only on the seasonality parameters, the horizon and the
// exponent, so repeated CF calls share one store.
using ThetaKey = std::tuple<int, double, double, double, double, double>;
std::map<ThetaKey, double> theta_cache;             // guarded by theta_cache_mutex
std::shared_mutex theta_cache_mutex;

double theta_transform_cached(const SeasonalitySpec& spec, double T, double lambda) {
    const ThetaKey key{static_cast<int>(spec.pattern()), spec.a(), spec.b(), spec.t0(), lambda, T};
    {
        std::shared_lock lock(theta_cache_mutex);
        auto it = theta_cache.find(key);
        if (it != theta_cache.end()) return it->second;
    }
    const double value = theta_transform(spec, T, lambda);
    std::unique_lock lock(theta_cache_mutex);
    theta_cache.emplace(key, value);
    return value;
}

// The Gaussian-factor covariance entries are u-independent; cache them the
// same way so CF sweeps do not re-run the quadrature per node.
using CovKey = std::tuple<int, double, double, double, double, double, double, double, double,
                          double>;
std::map<CovKey, double> covariance_cache;          // guarded by covariance_cache_mutex
std::shared_mutex covariance_cache_mutex;

double covariance_cached(const VolFactor& factor, double T, double Tk, double Tm) {
    const SeasonalitySpec& s = factor.seasonality;
    const CovKey key{static_cast<int>(s.pattern()), s.a(),     s.b(), s.t0(), factor.lambda,
                     factor.kappa,                  factor.v0, T,     Tk,     Tm};
    {
        std::shared_lock lock(covariance_cache_mutex);
        auto it = covariance_cache.find(key);
        if (it != covariance_cache.end()) return it->second;
    }
    const double value = deterministic_covariance(factor, T, Tk, Tm);
    std::unique_lock lock(covariance_cache_mutex);
    covariance_cache.emplace(key, value);
    return value;
}

// Riccati right-hand side in s = T - t, where q collapses to
// c1 e^{-lambda s} + c2 e^{-2 lambda s}.
struct RiccatiRhs {
    double kappa, half_sigma2, lambda;
    Complex c1, c2;
    const SeasonalitySpec* seasonality;
    double T;

    std::array<Complex, 2> operator()(double s, const std::array<Complex, 2>& y) const {
        const double damp = std::exp(-lambda * s);
        const Complex q = c1 * damp + c2 * (damp * damp);
        const Complex a = y[0];
        return {-kappa * a + half_sigma2 * (a * a) + q,
                kappa * theta_eval(*seasonality, T - s) * a};
    }
};

// CF contribution of a sigma = 0 factor: the log-returns it drives are
// Gaussian with covariance C_km and mean -C_kk/2.
Complex gaussian_factor_cf(const VolFactor& factor, const CfArgs& args) {
    const double c11 = covariance_cached(factor, args.T, args.T1, args.T1);
    const double c22 = covariance_cached(factor, args.T, args.T2, args.T2);
    const double c12 = covariance_cached(factor, args.T, args.T1, args.T2);
    const Complex u1 = args.u1, u2 = args.u2;
    const Complex exponent = kI * (u1 * (-0.5 * c11) + u2 * (-0.5 * c22)) -
                             0.5 * (u1 * u1 * c11 + 2.0 * u1 * u2 * c12 + u2 * u2 * c22);
    return std::exp(exponent);
}

Complex stochastic_factor_cf(const VolFactor& factor, const CfArgs& args, double rel_tol) {
    const FactorOdeSolution ode = solve_factor_odes(factor, args.u1, args.u2, args.T, args.T1,
                                                    args.T2, rel_tol);
    const double theta_hat = theta_transform_cached(factor.seasonality, args.T, factor.lambda);
    const Complex f1_at_0 = f1(factor, args.u1, args.u2, 0.0, args.T1, args.T2);
    const Complex exponent = -kI * (factor.rho / factor.sigma) * f1_at_0 *
                                 (factor.v0 + factor.kappa * theta_hat) +
                             ode.A_at_0 * factor.v0 + ode.B_at_0;
    return std::exp(exponent);
}

}  // namespace

CfArgs::CfArgs(Complex u1_, Complex u2_, double T_, double T1_, double T2_)
    : u1(u1_), u2(u2_), T(T_), T1(T1_), T2(T2_) {
    if (!(T > 0.0 && T <= std::min(T1, T2)))
        throw ConfigError("cf: requires 0 < T <= min(T1, T2)");
}

Complex f1(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2) {
    return u1 * std::exp(-factor.lambda * (T1 - t)) + u2 * std::exp(-factor.lambda * (T2 - t));
}

Complex f2(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2) {
    return u1 * std::exp(-2.0 * factor.lambda * (T1 - t)) +
           u2 * std::exp(-2.0 * factor.lambda * (T2 - t));
}

Complex q_coeff(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2) {
    if (factor.sigma <= 0.0)
        throw ConfigError("q_coeff: sigma = 0 factors take the deterministic-variance path");
    const Complex v1 = f1(factor, u1, u2, t, T1, T2);
    const Complex v2 = f2(factor, u1, u2, t, T1, T2);
    return kI * factor.rho * (factor.kappa - factor.lambda) / factor.sigma * v1 -
           0.5 * (1.0 - factor.rho * factor.rho) * (v1 * v1) - 0.5 * kI * v2;
}

FactorOdeSolution solve_factor_odes(const VolFactor& factor, Complex u1, Complex u2, double T,
                                    double T1, double T2, double rel_tol) {
    if (factor.sigma <= 0.0)
        throw ConfigError("solve_factor_odes: sigma = 0 factors take the deterministic path");

    const Complex f1_T = f1(factor, u1, u2, T, T1, T2);
    const Complex f2_T = f2(factor, u1, u2, T, T1, T2);

    RiccatiRhs rhs;
    rhs.kappa = factor.kappa;
    rhs.half_sigma2 = 0.5 * factor.sigma * factor.sigma;
    rhs.lambda = factor.lambda;
    rhs.c1 = kI * factor.rho * (factor.kappa - factor.lambda) / factor.sigma * f1_T;
    rhs.c2 = -0.5 * (1.0 - factor.rho * factor.rho) * (f1_T * f1_T) - 0.5 * kI * f2_T;
    rhs.seasonality = &factor.seasonality;
    rhs.T = T;

    // s-coordinates of theta's jumps/kinks, so no step straddles one
    std::vector<double> stops;
    for (double t : theta_breakpoints(factor.seasonality, T)) stops.push_back(T - t);
    std::sort(stops.begin(), stops.end());
    stops.push_back(T);

    std::array<Complex, 2> state{kI * (factor.rho / factor.sigma) * f1_T, Complex{0.0, 0.0}};
    double s = 0.0;
    try {
        for (double s_next : stops) {
            if (s_next > s) state = integrate_dopri5(rhs, s, s_next, state, rel_tol);
            s = s_next;
        }
    } catch (const NumericalError& e) {
        throw NumericalError("riccati: blow-up at t = " + std::to_string(T - e.location), 0.0,
                             T - e.location);
    }

    return {state[0], state[1], kI * (factor.rho / factor.sigma) * f1_T};
}

Complex riccati_a(const VolFactor& factor, Complex u1, Complex u2, double t, double T, double T1,
                  double T2, double rel_tol) {
    if (factor.sigma <= 0.0)
        throw ConfigError("riccati_a: sigma = 0 factors take the deterministic path");

    const Complex f1_T = f1(factor, u1, u2, T, T1, T2);
    if (t >= T) return kI * (factor.rho / factor.sigma) * f1_T;

    // Integrate only over [t, T]: run the s-clock up to T - t.
    const Complex f2_T = f2(factor, u1, u2, T, T1, T2);
    RiccatiRhs rhs;
    rhs.kappa = factor.kappa;
    rhs.half_sigma2 = 0.5 * factor.sigma * factor.sigma;
    rhs.lambda = factor.lambda;
    rhs.c1 = kI * factor.rho * (factor.kappa - factor.lambda) / factor.sigma * f1_T;
    rhs.c2 = -0.5 * (1.0 - factor.rho * factor.rho) * (f1_T * f1_T) - 0.5 * kI * f2_T;
    rhs.seasonality = &factor.seasonality;
    rhs.T = T;

    std::vector<double> stops;
    for (double tb : theta_breakpoints(factor.seasonality, T))
        if (tb > t) stops.push_back(T - tb);
    std::sort(stops.begin(), stops.end());
    stops.push_back(T - std::max(t, 0.0));

    std::array<Complex, 2> state{kI * (factor.rho / factor.sigma) * f1_T, Complex{0.0, 0.0}};
    double s = 0.0;
    for (double s_next : stops) {
        if (s_next > s) state = integrate_dopri5(rhs, s, s_next, state, rel_tol);
        s = s_next;
    }
    return state[0];
}

Complex joint_cf(const ModelConfig& config, const CfArgs& args) {
    Complex product{1.0, 0.0};
    for (const VolFactor& factor : config.factors())
        product *= factor.deterministic() ? gaussian_factor_cf(factor, args)
                                          : stochastic_factor_cf(factor, args, 1e-10);
    return product;
}

Complex single_cf(const ModelConfig& config, Complex u, double T, double T1) {
    return joint_cf(config, CfArgs{u, Complex{0.0, 0.0}, T, T1, T1});
}

Complex log_price_cf(const ModelConfig& config, const CfArgs& args) {
    const double log_f1 = std::log(initial_price(config, args.T1));
    const double log_f2 = std::log(initial_price(config, args.T2));
    return std::exp(kI * (args.u1 * log_f1 + args.u2 * log_f2)) * joint_cf(config, args);
}

Complex deterministic_cf(const ModelConfig& config, const CfArgs& args) {
    if (!config.all_deterministic())
        throw ConfigError("deterministic_cf: every factor must have sigma = 0");
    Complex product{1.0, 0.0};
    for (const VolFactor& factor : config.factors())
        product *= gaussian_factor_cf(factor, args);
    return product;
}

double deterministic_covariance(const VolFactor& factor, double T, double Tk, double Tm) {
    const double lambda = factor.lambda;
    auto integrand = [&](double t) {
        return std::exp(-lambda * (Tk - t)) * std::exp(-lambda * (Tm - t)) *
               deterministic_variance(factor, t);
    };
    return integrate_with_breakpoints(integrand, 0.0, T, theta_breakpoints(factor.seasonality, T),
                                      1e-13, 1e-12)
        .value;
}

std::size_t theta_cache_size() {
    std::shared_lock lock(theta_cache_mutex);
    return theta_cache.size();
}

}  // namespace seasvol
