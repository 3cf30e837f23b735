#include "seasvol/spread.hpp"
#include "seasvol/charfn.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace seasvol {

namespace {

constexpr Complex kI{0.0, 1.0};

struct LowerBoundContext {
    const ModelConfig* config;
    CsoSpec spec;
    double alpha;
    double delta;
    int evaluations = 0;

    LowerBoundContext(const ModelConfig& c, const CsoSpec& s, double a, double d)
        : config(&c), spec(s), alpha(a), delta(d) {}

    // E[(S1 - S2 - K) e^{(delta + i gamma)(X1 - alpha X2)}] / (delta + i gamma)
    // assembled from three joint CF evaluations of the log prices.
    Complex payoff_transform(double gamma) {
        const Complex z{gamma, -delta};  // gamma - i delta
        const Complex u2 = -alpha * z;
        const Complex t1 = log_price_cf(*config, CfArgs{z - kI, u2, spec.expiry, spec.T1, spec.T2});
        const Complex t2 = log_price_cf(*config, CfArgs{z, u2 - kI, spec.expiry, spec.T1, spec.T2});
        const Complex t3 = log_price_cf(*config, CfArgs{z, u2, spec.expiry, spec.T1, spec.T2});
        evaluations += 3;
        return (t1 - t2 - spec.strike * t3) / Complex{delta, gamma};
    }
};

// One evaluation of the lower bound at exercise threshold k; quadrature
// diagnostics accumulate into `result`.
double lower_bound_at(LowerBoundContext& ctx, double k, double discount, PriceResult& result) {
    auto integrand = [&](double gamma) {
        return std::real(std::exp(-kI * gamma * k) * ctx.payoff_transform(gamma));
    };
    const QuadratureResult q = integrate_semi_infinite(integrand);
    const double scale = discount * std::exp(-ctx.delta * k) / std::numbers::pi;
    result.error_estimate += scale * q.error_estimate;
    result.evaluations = ctx.evaluations;
    return scale * q.value;
}

}  // namespace

CsoSpec::CsoSpec(double expiry_, double T1_, double T2_, double strike_)
    : expiry(expiry_), T1(T1_), T2(T2_), strike(strike_) {
    if (!(expiry > 0.0 && expiry <= T1 && T1 < T2))
        throw ConfigError("cso: requires 0 < expiry <= T1 < T2");
}

PriceResult cso_call(const ModelConfig& config, const CsoSpec& spec, const CsoKnobs& knobs) {
    const double f2 = initial_price(config, spec.T2);
    if (!(f2 + spec.strike > 0.0))
        throw ConfigError("cso: exercise-region parameterization needs F2 + K > 0");

    const double alpha = f2 / (f2 + spec.strike);
    const double k0 = std::log(f2 + spec.strike) - alpha * std::log(f2);
    const double discount = std::exp(-config.rate() * spec.expiry);

    LowerBoundContext ctx(config, spec, alpha, knobs.damping);
    PriceResult out;
    double best = lower_bound_at(ctx, k0, discount, out);

    if (knobs.optimize_threshold) {
        // golden-section maximization of the bound around the analytic k
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = k0 - 0.75, hi = k0 + 0.75;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double v1 = lower_bound_at(ctx, x1, discount, out);
        double v2 = lower_bound_at(ctx, x2, discount, out);
        for (int iter = 0; iter < 40 && hi - lo > 1e-6; ++iter) {
            if (v1 < v2) {
                lo = x1, x1 = x2, v1 = v2;
                x2 = lo + gr * (hi - lo);
                v2 = lower_bound_at(ctx, x2, discount, out);
            } else {
                hi = x2, x2 = x1, v2 = v1;
                x1 = hi - gr * (hi - lo);
                v1 = lower_bound_at(ctx, x1, discount, out);
            }
            best = std::max(best, std::max(v1, v2));
        }
    }

    out.value = std::max(best, 0.0);
    return out;
}

PriceResult cso_put(const ModelConfig& config, const CsoSpec& spec, const CsoKnobs& knobs) {
    PriceResult result = cso_call(config, spec, knobs);
    const double forward_spread =
        initial_price(config, spec.T1) - initial_price(config, spec.T2) - spec.strike;
    result.value -= std::exp(-config.rate() * spec.expiry) * forward_spread;
    return result;
}

void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi_quarter = std::pow(std::numbers::pi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // standard initial guesses, then Newton on the orthonormal recurrence
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * nodes[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * nodes[1];
        else
            z = 2.0 * z - nodes[i - 2];

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pi_quarter, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

double copula_spread_price(double F1, double F2, double strike, double expiry, double vol1,
                           double vol2, double rho, double rate, int nodes) {
    if (!(rho > -1.0 && rho < 1.0)) throw ConfigError("copula: rho must lie in (-1, 1)");
    const double s1 = vol1 * std::sqrt(expiry);
    const double s2 = vol2 * std::sqrt(expiry);
    const double s_cond = s1 * std::sqrt(1.0 - rho * rho);

    static thread_local std::vector<double> x, w;
    static thread_local int cached_n = 0;
    if (cached_n != nodes) {
        gauss_hermite(nodes, x, w);
        cached_n = nodes;
    }

    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double zi = std::numbers::sqrt2 * x[i];
        const double leg2 = F2 * std::exp(-0.5 * s2 * s2 + s2 * zi);
        const double k_cond = strike + leg2;
        const double mean1 = F1 * std::exp(-0.5 * rho * rho * s1 * s1 + rho * s1 * zi);
        double value;
        if (k_cond <= 0.0) {
            value = mean1 - k_cond;
        } else if (s_cond <= 0.0) {
            value = std::max(mean1 - k_cond, 0.0);
        } else {
            const double d1 = std::log(mean1 / k_cond) / s_cond + 0.5 * s_cond;
            value = mean1 * norm_cdf(d1) - k_cond * norm_cdf(d1 - s_cond);
        }
        sum += w[i] * value;
    }
    return std::exp(-rate * expiry) * sum / std::sqrt(std::numbers::pi);
}

LegVols model_leg_vols(const ModelConfig& config, const CsoSpec& spec) {
    const double f1 = initial_price(config, spec.T1);
    const double f2 = initial_price(config, spec.T2);
    return {implied_vol(config, VanillaSpec{f1, spec.expiry, spec.T1}),
            implied_vol(config, VanillaSpec{f2, spec.expiry, spec.T2})};
}

double implied_correlation_from_price(double target, double F1, double F2, double strike,
                                      double expiry, double vol1, double vol2, double rate) {
    const double eps = 1e-9;
    double lo = -1.0 + eps, hi = 1.0 - eps;
    double f_lo = copula_spread_price(F1, F2, strike, expiry, vol1, vol2, lo, rate) - target;
    double f_hi = copula_spread_price(F1, F2, strike, expiry, vol1, vol2, hi, rate) - target;
    if (f_lo * f_hi > 0.0)
        throw NumericalError(
            "implied correlation: target " + std::to_string(target) +
            " outside the attainable range [" + std::to_string(f_hi + target) + ", " +
            std::to_string(f_lo + target) + "]");

    double mid = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double f_mid =
            copula_spread_price(F1, F2, strike, expiry, vol1, vol2, mid, rate) - target;
        if (std::abs(f_mid) <= 1e-10 || hi - lo <= 1e-15) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

double implied_correlation(const ModelConfig& config, const CsoSpec& spec, const CsoKnobs& knobs) {
    const PriceResult price = cso_call(config, spec, knobs);
    const LegVols vols = model_leg_vols(config, spec);
    return implied_correlation_from_price(price.value, initial_price(config, spec.T1),
                                          initial_price(config, spec.T2), spec.strike,
                                          spec.expiry, vols.vol1, vols.vol2, config.rate());
}

}  // namespace seasvol
