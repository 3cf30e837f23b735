#pragma once

#include "seasvol/charfn.hpp"
#include "seasvol/model.hpp"

#include <unordered_map>

namespace seasvol {

struct VanillaSpec {
    double strike;            // > 0
    double expiry;            // option maturity T, 0 < T <= futures_maturity
    double futures_maturity;  // underlying futures maturity Tm
    bool is_call = true;

    VanillaSpec(double strike, double expiry, double futures_maturity, bool is_call = true);
};

struct PriceResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute, from the quadrature layers
    int evaluations = 0;          // characteristic-function evaluations
};

// Fourier-inversion pricer for European options on one futures contract,
// using the two-probability representation
//   C = e^{-rT} (F * P1 - K * P2),
// P1, P2 recovered from the log-price CF by half-plus-integral inversion.
// One instance fixes (T, Tm) and memoizes CF values across strikes, which is
// what smile generation wants.
class VanillaPricer {
public:
    VanillaPricer(const ModelConfig& config, double expiry, double futures_maturity);

    PriceResult price(double strike, bool is_call = true);

    // Put priced by its own inversion (reversed payoff) instead of parity;
    // exists so parity can be verified against an independent route.
    PriceResult put_via_inversion(double strike);

    double forward() const { return forward_; }

private:
    Complex phi(double u);          // log-price CF at real u
    Complex phi_shifted(double u);  // log-price CF at u - i

    const ModelConfig& config_;
    double expiry_;
    double futures_maturity_;
    double forward_;
    Complex phi_at_minus_i_;
    std::unordered_map<double, Complex> memo_plain_;
    std::unordered_map<double, Complex> memo_shifted_;
    int evaluations_ = 0;
};

PriceResult price_vanilla(const ModelConfig& config, const VanillaSpec& spec);

// Black (1976) futures option price with annualized volatility `vol`.
double black76_price(double forward, double strike, double expiry, double vol, double rate,
                     bool is_call = true);

// Volatility solving black76_price = price to |error| <= 1e-10, bracketed in
// [1e-6, 5]; prices at or outside the no-arbitrage bounds raise
// NumericalError naming the violated bracket side.
double black76_implied_vol(double price, double forward, double strike, double expiry,
                           double rate, bool is_call = true);

// Implied volatility of the model price for the given option.
double implied_vol(const ModelConfig& config, const VanillaSpec& spec);

double norm_cdf(double x);
double norm_pdf(double x);

}  // namespace seasvol
