#include "seasvol/seasonality.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace seasvol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fractional part mapped to [0, 1) for all real x, negative included
double frac(double x) { return x - std::floor(x); }

// sum_{k=1}^{n} e^{lambda k}, empty (0) when n < 1
double exp_sum_from_1(int n, double lambda) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += std::exp(lambda * k);
    return s;
}

// sum_{k=0}^{n} e^{lambda k}, empty (0) when n < 0
double exp_sum_from_0(int n, double lambda) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += std::exp(lambda * k);
    return s;
}

double sinusoid_transform(double a, double b, double t0, double T, double lambda) {
    const double denom = lambda * lambda + kTwoPi * kTwoPi;
    const double head = b * std::exp(lambda * T) / denom *
                        (kTwoPi * std::sin(kTwoPi * (T - t0)) + lambda * std::cos(kTwoPi * (T - t0)));
    const double tail = b / denom * (kTwoPi * std::sin(kTwoPi * t0) - lambda * std::cos(kTwoPi * t0));
    return head + tail + a / lambda * (std::expm1(lambda * T));
}

double sawtooth_transform(double a, double b, double t0, double T, double lambda) {
    // int_0^T (a + b(t - t0)) e^{lt} dt  plus the floor-function correction
    const double linear = (b * (1.0 / lambda + t0) - a) / lambda +
                          std::exp(lambda * T) / lambda * (a + b * (T - 1.0 / lambda - t0));
    const int n = static_cast<int>(std::floor(T - t0));
    const double indicator_lt = (T < t0) ? 1.0 : 0.0;
    const double sum = (T >= t0) ? exp_sum_from_1(n, lambda) : 0.0;
    const double floor_part = std::exp(lambda * t0) / lambda *
                              (n * std::exp(lambda * (T - t0)) - sum + indicator_lt +
                               std::exp(-lambda * t0) - 1.0);
    return linear - b * floor_part;
}

double triangle_transform(double a, double b, double t0, double T, double lambda) {
    const double z1 = 0.5 + 1.0 / lambda;
    const double z2 = 0.5 - 1.0 / lambda;

    // int_{-t0}^{0} |1/2 - frac(y)| e^{ly} dy
    double head;
    if (t0 <= 0.5) {
        head = (z2 - (z2 - t0) * std::exp(-lambda * t0)) / lambda;
    } else {
        head = (z2 + 2.0 / lambda * std::exp(-0.5 * lambda) + (z2 - t0) * std::exp(-lambda * t0)) /
               lambda;
    }

    // int_{0}^{T-t0} |1/2 - frac(y)| e^{ly} dy
    double tail;
    if (T >= t0) {
        const int n = static_cast<int>(std::floor(T - t0));
        const double alpha = frac(T - t0);
        const double z3 = z1 - alpha;
        const double per_period = 2.0 / lambda * std::exp(0.5 * lambda) + z2 * std::exp(lambda) - z1;
        const double partial = (alpha <= 0.5)
                                   ? z3 * std::exp(lambda * alpha) - z1
                                   : 2.0 / lambda * std::exp(0.5 * lambda) -
                                         z3 * std::exp(lambda * alpha) - z1;
        tail = (per_period * exp_sum_from_0(n - 1, lambda) + std::exp(lambda * n) * partial) / lambda;
    } else {
        const double y = T - t0;  // in [-1, 0)
        if (y >= -0.5) {
            tail = (std::exp(lambda * y) * (z2 + y) - z2) / lambda;
        } else {
            tail = -(2.0 / lambda * std::exp(-0.5 * lambda) + std::exp(lambda * y) * (z2 + y) + z2) /
                   lambda;
        }
    }

    return a / lambda * std::expm1(lambda * T) + b * std::exp(lambda * t0) * (head + tail);
}

}  // namespace

SeasonalPattern pattern_from_string(const std::string& name) {
    if (name == "constant") return SeasonalPattern::Constant;
    if (name == "sinusoid") return SeasonalPattern::Sinusoid;
    if (name == "exp-sinusoid" || name == "expsinusoid") return SeasonalPattern::ExpSinusoid;
    if (name == "sawtooth") return SeasonalPattern::Sawtooth;
    if (name == "triangle") return SeasonalPattern::Triangle;
    if (name == "spiked") return SeasonalPattern::Spiked;
    throw ConfigError("unknown seasonality pattern '" + name + "'");
}

std::string to_string(SeasonalPattern pattern) {
    switch (pattern) {
        case SeasonalPattern::Constant: return "constant";
        case SeasonalPattern::Sinusoid: return "sinusoid";
        case SeasonalPattern::ExpSinusoid: return "exp-sinusoid";
        case SeasonalPattern::Sawtooth: return "sawtooth";
        case SeasonalPattern::Triangle: return "triangle";
        case SeasonalPattern::Spiked: return "spiked";
    }
    return "?";
}

SeasonalitySpec::SeasonalitySpec(SeasonalPattern pattern, double a, double b, double t0)
    : pattern_(pattern), a_(a), b_(b), t0_(t0) {
    if (!(a > 0.0)) throw ConfigError("seasonality: a must be > 0");
    if (!(b >= 0.0)) throw ConfigError("seasonality: b must be >= 0");
    if (!(t0 >= 0.0 && t0 < 1.0)) throw ConfigError("seasonality: t0 must lie in [0, 1)");
    // b large enough to drive theta_min <= 0 (possible for the sinusoid) is
    // tolerated here; theta_bounds rejects such specs when positive bounds
    // are actually required.
}

SeasonalitySpec SeasonalitySpec::without_seasonality() const {
    return SeasonalitySpec(pattern_, a_, 0.0, t0_);
}

double theta_eval(const SeasonalitySpec& spec, double t) {
    const double a = spec.a(), b = spec.b(), t0 = spec.t0();
    switch (spec.pattern()) {
        case SeasonalPattern::Constant:
            return a;
        case SeasonalPattern::Sinusoid:
            return a + b * std::cos(kTwoPi * (t - t0));
        case SeasonalPattern::ExpSinusoid:
            return a * std::exp(b * std::cos(kTwoPi * (t - t0)));
        case SeasonalPattern::Sawtooth:
            return a + b * frac(t - t0);
        case SeasonalPattern::Triangle:
            return a + b * std::abs(0.5 - frac(t - t0));
        case SeasonalPattern::Spiked: {
            const double s = std::abs(std::sin(std::numbers::pi * (t - t0)));
            const double w = 2.0 / (1.0 + s) - 1.0;
            return a + b * w * w;
        }
    }
    return a;
}

ThetaBounds theta_bounds(const SeasonalitySpec& spec) {
    const double a = spec.a(), b = spec.b();
    ThetaBounds bounds{a, a};
    switch (spec.pattern()) {
        case SeasonalPattern::Constant: break;
        case SeasonalPattern::Sinusoid: bounds = {a - b, a + b}; break;
        case SeasonalPattern::ExpSinusoid: bounds = {a * std::exp(-b), a * std::exp(b)}; break;
        case SeasonalPattern::Sawtooth: bounds = {a, a + b}; break;
        case SeasonalPattern::Triangle: bounds = {a, a + 0.5 * b}; break;
        case SeasonalPattern::Spiked: bounds = {a, a + b}; break;
    }
    if (!(bounds.theta_min > 0.0))
        throw ConfigError("seasonality: theta_min must be strictly positive");
    return bounds;
}

std::vector<double> theta_breakpoints(const SeasonalitySpec& spec, double T) {
    std::vector<double> pts;
    const double t0 = spec.t0();
    switch (spec.pattern()) {
        case SeasonalPattern::Sawtooth:
        case SeasonalPattern::Spiked:
            for (double t = frac(t0); t < T; t += 1.0)
                if (t > 0.0) pts.push_back(t);
            break;
        case SeasonalPattern::Triangle:
            for (double t = frac(t0 + 0.5) - 1.0; t < T; t += 0.5)
                if (t > 0.0) pts.push_back(t);
            break;
        default:
            break;
    }
    return pts;
}

double theta_transform(const SeasonalitySpec& spec, double T, double lambda) {
    if (!(T >= 0.0)) throw ConfigError("theta_transform: T must be >= 0");
    if (T == 0.0) return 0.0;

    // Near lambda = 0 every closed form divides by lambda; quadrature is exact
    // enough there and avoids the removable singularity.
    const bool smooth_pattern = spec.pattern() == SeasonalPattern::ExpSinusoid ||
                                spec.pattern() == SeasonalPattern::Spiked;
    if (std::abs(lambda) < 1e-6 || smooth_pattern) return theta_transform_oracle(spec, T, lambda);

    const double a = spec.a(), b = spec.b(), t0 = spec.t0();
    switch (spec.pattern()) {
        case SeasonalPattern::Constant:
            return a / lambda * std::expm1(lambda * T);
        case SeasonalPattern::Sinusoid:
            return sinusoid_transform(a, b, t0, T, lambda);
        case SeasonalPattern::Sawtooth:
            return sawtooth_transform(a, b, t0, T, lambda);
        case SeasonalPattern::Triangle:
            return triangle_transform(a, b, t0, T, lambda);
        default:
            return theta_transform_oracle(spec, T, lambda);
    }
}

double theta_transform_oracle(const SeasonalitySpec& spec, double T, double lambda) {
    if (!(T >= 0.0)) throw ConfigError("theta_transform_oracle: T must be >= 0");
    if (T == 0.0) return 0.0;
    auto integrand = [&](double t) { return theta_eval(spec, t) * std::exp(lambda * t); };
    return integrate_with_breakpoints(integrand, 0.0, T, theta_breakpoints(spec, T), 1e-12, 1e-12)
        .value;
}

}  // namespace seasvol
