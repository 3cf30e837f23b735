#pragma once

#include "seasvol/model.hpp"
#include "seasvol/vanilla.hpp"

#include <vector>

namespace seasvol {

// Calendar spread option on F(T,T1) - F(T,T2); the strike may be negative.
struct CsoSpec {
    double expiry;  // option maturity T, T <= T1
    double T1;      // near leg
    double T2;      // far leg, T1 < T2
    double strike;

    CsoSpec(double expiry, double T1, double T2, double strike);
};

struct CsoKnobs {
    double damping = 0.75;            // Fourier damping of the exercise indicator
    bool optimize_threshold = false;  // maximize the bound over the region threshold
};

// Lower-bound price of the calendar spread call via a single Fourier integral
// of the joint log-price CF over an approximate exercise region
// {X1 - alpha X2 >= k}; alpha = F2/(F2+K) and k = ln(F2+K) - alpha ln F2, so
// the bound is exact at K = 0. With optimize_threshold the bound is
// additionally maximized over k.
PriceResult cso_call(const ModelConfig& config, const CsoSpec& spec, const CsoKnobs& knobs = {});

// Put by calendar-spread parity: CSP = CSC - e^{-rT} (F1 - F2 - K).
PriceResult cso_put(const ModelConfig& config, const CsoSpec& spec, const CsoKnobs& knobs = {});

// Reference pricer: bivariate lognormal margins (Black-76 with the given leg
// vols) joined by a Gaussian copula with correlation rho, priced by
// conditioning on the far leg's driver and Gauss-Hermite quadrature.
double copula_spread_price(double F1, double F2, double strike, double expiry, double vol1,
                           double vol2, double rho, double rate, int nodes = 200);

struct LegVols {
    double vol1;
    double vol2;
};

// ATM-forward implied Black-76 vol of each leg at the option maturity.
LegVols model_leg_vols(const ModelConfig& config, const CsoSpec& spec);

// The rho in (-1,1) at which the copula reference pricer reproduces the
// target price to 1e-10. Throws NumericalError (reporting both bracketing
// prices) when the target is outside the attainable range.
double implied_correlation_from_price(double target, double F1, double F2, double strike,
                                      double expiry, double vol1, double vol2, double rate);

// Convenience: price the CSO in the model, take model leg vols, invert.
double implied_correlation(const ModelConfig& config, const CsoSpec& spec,
                           const CsoKnobs& knobs = {});

// Physicists' Gauss-Hermite rule: int e^{-x^2} f(x) dx = sum w_i f(x_i).
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace seasvol
