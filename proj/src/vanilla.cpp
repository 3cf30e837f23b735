#include "seasvol/vanilla.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace seasvol {

namespace {
constexpr Complex kI{0.0, 1.0};
}

VanillaSpec::VanillaSpec(double strike_, double expiry_, double futures_maturity_, bool is_call_)
    : strike(strike_), expiry(expiry_), futures_maturity(futures_maturity_), is_call(is_call_) {
    if (!(strike > 0.0)) throw ConfigError("vanilla: strike must be > 0");
    if (!(expiry > 0.0 && expiry <= futures_maturity))
        throw ConfigError("vanilla: requires 0 < expiry <= futures maturity");
}

VanillaPricer::VanillaPricer(const ModelConfig& config, double expiry, double futures_maturity)
    : config_(config), expiry_(expiry), futures_maturity_(futures_maturity) {
    if (!(expiry > 0.0 && expiry <= futures_maturity))
        throw ConfigError("vanilla: requires 0 < expiry <= futures maturity");
    forward_ = initial_price(config, futures_maturity);
    phi_at_minus_i_ =
        log_price_cf(config_, CfArgs{-kI, Complex{0.0, 0.0}, expiry_, futures_maturity_,
                                     futures_maturity_});
    ++evaluations_;
}

Complex VanillaPricer::phi(double u) {
    auto it = memo_plain_.find(u);
    if (it != memo_plain_.end()) return it->second;
    const Complex value = log_price_cf(
        config_, CfArgs{Complex{u, 0.0}, Complex{0.0, 0.0}, expiry_, futures_maturity_,
                        futures_maturity_});
    ++evaluations_;
    memo_plain_.emplace(u, value);
    return value;
}

Complex VanillaPricer::phi_shifted(double u) {
    auto it = memo_shifted_.find(u);
    if (it != memo_shifted_.end()) return it->second;
    const Complex value = log_price_cf(
        config_, CfArgs{Complex{u, -1.0}, Complex{0.0, 0.0}, expiry_, futures_maturity_,
                        futures_maturity_});
    ++evaluations_;
    memo_shifted_.emplace(u, value);
    return value;
}

PriceResult VanillaPricer::price(double strike, bool is_call) {
    if (!(strike > 0.0)) throw ConfigError("vanilla: strike must be > 0");
    const double log_k = std::log(strike);

    auto integrand_p1 = [&](double u) {
        return std::real(std::exp(-kI * u * log_k) * phi_shifted(u) /
                         (kI * u * phi_at_minus_i_));
    };
    auto integrand_p2 = [&](double u) {
        return std::real(std::exp(-kI * u * log_k) * phi(u) / (kI * u));
    };

    const QuadratureResult q1 = integrate_semi_infinite(integrand_p1);
    const QuadratureResult q2 = integrate_semi_infinite(integrand_p2);

    const double p1 = 0.5 + q1.value / std::numbers::pi;
    const double p2 = 0.5 + q2.value / std::numbers::pi;

    const double discount = std::exp(-config_.rate() * expiry_);
    const double expected_f = std::real(phi_at_minus_i_);  // = F(0,Tm) up to CF accuracy
    double value = discount * (expected_f * p1 - strike * p2);
    if (!is_call) value -= discount * (forward_ - strike);  // put-call parity

    PriceResult out;
    out.value = std::max(value, 0.0);
    out.error_estimate =
        discount * (expected_f * q1.error_estimate + strike * q2.error_estimate) /
        std::numbers::pi;
    out.evaluations = evaluations_;
    return out;
}

PriceResult VanillaPricer::put_via_inversion(double strike) {
    if (!(strike > 0.0)) throw ConfigError("vanilla: strike must be > 0");
    const double log_k = std::log(strike);

    auto integrand_p1 = [&](double u) {
        return std::real(std::exp(-kI * u * log_k) * phi_shifted(u) /
                         (kI * u * phi_at_minus_i_));
    };
    auto integrand_p2 = [&](double u) {
        return std::real(std::exp(-kI * u * log_k) * phi(u) / (kI * u));
    };

    const QuadratureResult q1 = integrate_semi_infinite(integrand_p1);
    const QuadratureResult q2 = integrate_semi_infinite(integrand_p2);

    // P[F < K] = 1 - P2 and E[F 1{F<K}] = F (1 - P1)
    const double p1 = 0.5 + q1.value / std::numbers::pi;
    const double p2 = 0.5 + q2.value / std::numbers::pi;
    const double discount = std::exp(-config_.rate() * expiry_);
    const double expected_f = std::real(phi_at_minus_i_);

    PriceResult out;
    out.value = std::max(discount * (strike * (1.0 - p2) - expected_f * (1.0 - p1)), 0.0);
    out.error_estimate =
        discount * (expected_f * q1.error_estimate + strike * q2.error_estimate) /
        std::numbers::pi;
    out.evaluations = evaluations_;
    return out;
}

PriceResult price_vanilla(const ModelConfig& config, const VanillaSpec& spec) {
    VanillaPricer pricer(config, spec.expiry, spec.futures_maturity);
    return pricer.price(spec.strike, spec.is_call);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double black76_price(double forward, double strike, double expiry, double vol, double rate,
                     bool is_call) {
    const double discount = std::exp(-rate * expiry);
    const double s = vol * std::sqrt(expiry);
    if (s <= 0.0) {
        const double intrinsic = is_call ? forward - strike : strike - forward;
        return discount * std::max(intrinsic, 0.0);
    }
    const double d1 = std::log(forward / strike) / s + 0.5 * s;
    const double d2 = d1 - s;
    if (is_call) return discount * (forward * norm_cdf(d1) - strike * norm_cdf(d2));
    return discount * (strike * norm_cdf(-d2) - forward * norm_cdf(-d1));
}

double black76_implied_vol(double price, double forward, double strike, double expiry,
                           double rate, bool is_call) {
    double lo = 1e-6, hi = 5.0;
    const double price_lo = black76_price(forward, strike, expiry, lo, rate, is_call);
    const double price_hi = black76_price(forward, strike, expiry, hi, rate, is_call);
    if (price <= price_lo)
        throw NumericalError("implied vol: price " + std::to_string(price) +
                             " at or below the lower bracket (intrinsic) value " +
                             std::to_string(price_lo));
    if (price >= price_hi)
        throw NumericalError("implied vol: price " + std::to_string(price) +
                             " above the upper bracket value " + std::to_string(price_hi));

    // Newton on vega with bisection fallback keeping [lo, hi] a bracket
    const double discount = std::exp(-rate * expiry);
    double vol = 0.3;
    for (int iter = 0; iter < 200; ++iter) {
        const double value = black76_price(forward, strike, expiry, vol, rate, is_call);
        const double diff = value - price;
        if (std::abs(diff) <= 1e-10) return vol;
        (diff > 0.0 ? hi : lo) = vol;

        const double s = vol * std::sqrt(expiry);
        const double d1 = std::log(forward / strike) / s + 0.5 * s;
        const double vega = discount * forward * norm_pdf(d1) * std::sqrt(expiry);
        double next = vol - diff / vega;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        vol = next;
    }
    throw NumericalError("implied vol: no convergence after 200 iterations", hi - lo);
}

double implied_vol(const ModelConfig& config, const VanillaSpec& spec) {
    const PriceResult result = price_vanilla(config, spec);
    return black76_implied_vol(result.value, initial_price(config, spec.futures_maturity),
                               spec.strike, spec.expiry, config.rate(), spec.is_call);
}

}  // namespace seasvol
