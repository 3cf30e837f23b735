#pragma once

#include "seasvol/seasonality.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace seasvol {

// One volatility factor of the futures model:
//   dF/F += e^{-lambda (Tm - t)} sqrt(v) dB,
//   dv    = kappa (theta(t) - v) dt + sigma sqrt(v) dW,  corr(dB, dW) = rho.
struct VolFactor {
    double lambda;  // Samuelson damping rate, 1/years, > 0
    double kappa;   // variance mean-reversion speed, 1/years, > 0
    double sigma;   // vol-of-vol, >= 0 (0 selects the deterministic-variance case)
    double rho;     // spot-variance correlation, in (-1, 1)
    double v0;      // initial variance, > 0
    SeasonalitySpec seasonality;

    VolFactor(double lambda, double kappa, double sigma, double rho, double v0,
              SeasonalitySpec seasonality);

    bool deterministic() const { return sigma == 0.0; }
};

struct FellerResult {
    bool strict_positive;  // sigma^2 < 2 kappa theta_min
    double margin;         // 2 kappa theta_min - sigma^2
};

// The paper's own illustration parameters violate this condition, so a
// failed check is reported, never thrown.
FellerResult feller_check(const VolFactor& factor);

// Initial futures curve F(0, .) as listed (maturity, price) nodes.
using CurvePoint = std::pair<double, double>;

class ModelConfig {
public:
    ModelConfig(std::vector<VolFactor> factors, double rate, std::vector<CurvePoint> curve);

    const std::vector<VolFactor>& factors() const { return factors_; }
    const VolFactor& factor(std::size_t j) const { return factors_[j]; }
    std::size_t factor_count() const { return factors_.size(); }
    double rate() const { return rate_; }
    const std::vector<CurvePoint>& curve() const { return curve_; }

    bool all_deterministic() const;

private:
    std::vector<VolFactor> factors_;
    double rate_;
    std::vector<CurvePoint> curve_;
};

// F(0, Tm): exact at listed maturities, linear in price between them, flat
// when the curve has a single node. Extrapolation outside the listed range is
// rejected (ConfigError).
double initial_price(const ModelConfig& config, double maturity);

}  // namespace seasvol
