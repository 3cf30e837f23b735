#include "seasvol/model.hpp"
#include "seasvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seasvol {

VolFactor::VolFactor(double lambda_, double kappa_, double sigma_, double rho_, double v0_,
                     SeasonalitySpec seasonality_)
    : lambda(lambda_), kappa(kappa_), sigma(sigma_), rho(rho_), v0(v0_),
      seasonality(std::move(seasonality_)) {
    if (!(lambda > 0.0)) throw ConfigError("factor: lambda must be > 0");
    if (!(kappa > 0.0)) throw ConfigError("factor: kappa must be > 0");
    if (!(sigma >= 0.0)) throw ConfigError("factor: sigma must be >= 0");
    if (!(rho > -1.0 && rho < 1.0)) throw ConfigError("factor: rho must lie in (-1, 1)");
    if (!(v0 > 0.0)) throw ConfigError("factor: v0 must be > 0");
}

FellerResult feller_check(const VolFactor& factor) {
    const double theta_min = theta_bounds(factor.seasonality).theta_min;
    const double margin = 2.0 * factor.kappa * theta_min - factor.sigma * factor.sigma;
    return {margin > 0.0, margin};
}

ModelConfig::ModelConfig(std::vector<VolFactor> factors, double rate,
                         std::vector<CurvePoint> curve)
    : factors_(std::move(factors)), rate_(rate), curve_(std::move(curve)) {
    if (factors_.empty()) throw ConfigError("model: needs at least one factor");
    if (curve_.empty()) throw ConfigError("market: futures curve must not be empty");
    for (std::size_t i = 0; i < curve_.size(); ++i) {
        if (!(curve_[i].second > 0.0))
            throw ConfigError("market: curve price at node " + std::to_string(i + 1) +
                              " must be > 0");
        if (i > 0 && !(curve_[i].first > curve_[i - 1].first))
            throw ConfigError("market: curve maturities must be strictly increasing");
    }
    if (!std::isfinite(rate_)) throw ConfigError("model: rate must be finite");
}

bool ModelConfig::all_deterministic() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const VolFactor& f) { return f.deterministic(); });
}

double initial_price(const ModelConfig& config, double maturity) {
    const auto& curve = config.curve();
    if (curve.size() == 1) return curve.front().second;  // flat curve

    if (maturity < curve.front().first || maturity > curve.back().first)
        throw ConfigError("market: maturity " + std::to_string(maturity) +
                          " outside listed curve range [" + std::to_string(curve.front().first) +
                          ", " + std::to_string(curve.back().first) + "]");

    auto upper = std::lower_bound(curve.begin(), curve.end(), maturity,
                                  [](const CurvePoint& p, double m) { return p.first < m; });
    if (upper->first == maturity) return upper->second;
    auto lower = upper - 1;
    const double w = (maturity - lower->first) / (upper->first - lower->first);
    return lower->second + w * (upper->second - lower->second);
}

}  // namespace seasvol
