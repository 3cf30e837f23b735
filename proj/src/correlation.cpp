#include "seasvol/correlation.hpp"
#include "seasvol/errors.hpp"

#include <cmath>

namespace seasvol {

double deterministic_variance(const VolFactor& factor, double t) {
    if (!(t >= 0.0)) throw ConfigError("deterministic_variance: t must be >= 0");
    return std::exp(-factor.kappa * t) *
           (factor.v0 + factor.kappa * theta_transform(factor.seasonality, t, factor.kappa));
}

double instantaneous_correlation(const ModelConfig& config, double t, double T1, double T2,
                                 double v1, double v2) {
    if (config.factor_count() != 2)
        throw ConfigError("instantaneous_correlation: needs a two-factor model");
    if (!(t <= T1 && T1 < T2))
        throw ConfigError("instantaneous_correlation: requires t <= T1 < T2");
    if (!(v1 >= 0.0 && v2 >= 0.0 && v1 + v2 > 0.0))
        throw ConfigError("instantaneous_correlation: variances must be >= 0 and not both zero");

    const double l1 = config.factor(0).lambda;
    const double l2 = config.factor(1).lambda;

    const double num = std::exp(-l1 * (T1 + T2 - 2.0 * t)) * v1 +
                       std::exp(-l2 * (T1 + T2 - 2.0 * t)) * v2;
    const double d1 = std::exp(-2.0 * l1 * (T1 - t)) * v1 + std::exp(-2.0 * l2 * (T1 - t)) * v2;
    const double d2 = std::exp(-2.0 * l1 * (T2 - t)) * v1 + std::exp(-2.0 * l2 * (T2 - t)) * v2;
    return num / (std::sqrt(d1) * std::sqrt(d2));
}

CorrCurve corr_term_structure(const ModelConfig& config, double T1, double T2,
                              std::size_t grid_points) {
    if (!config.all_deterministic())
        throw ConfigError("corr_term_structure: every factor must have sigma = 0");
    if (config.factor_count() != 2)
        throw ConfigError("corr_term_structure: needs a two-factor model");
    if (grid_points < 2) throw ConfigError("corr_term_structure: grid needs >= 2 points");

    const VolFactor& f1 = config.factor(0);
    const VolFactor& f2 = config.factor(1);
    VolFactor b1(f1.lambda, f1.kappa, f1.sigma, f1.rho, f1.v0, f1.seasonality.without_seasonality());
    VolFactor b2(f2.lambda, f2.kappa, f2.sigma, f2.rho, f2.v0, f2.seasonality.without_seasonality());

    CorrCurve curve;
    curve.grid.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = T1 * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        curve.grid.push_back(t);
        const double rho = instantaneous_correlation(config, t, T1, T2,
                                                     deterministic_variance(f1, t),
                                                     deterministic_variance(f2, t));
        const double rho_bench = instantaneous_correlation(config, t, T1, T2,
                                                           deterministic_variance(b1, t),
                                                           deterministic_variance(b2, t));
        curve.values.push_back(rho);
        curve.benchmark.push_back(rho_bench);
        curve.difference.push_back(rho - rho_bench);
    }
    return curve;
}

}  // namespace seasvol
