#pragma once

#include "seasvol/model.hpp"

#include <complex>

namespace seasvol {

using Complex = std::complex<double>;

// Arguments of the joint characteristic function of the log-returns
// X_k(T) = ln(F(T,Tk)/F(0,Tk)), k = 1,2.
struct CfArgs {
    Complex u1;
    Complex u2;
    double T;   // evaluation time, 0 < T <= min(T1, T2)
    double T1;  // first futures maturity
    double T2;  // second futures maturity

    CfArgs(Complex u1, Complex u2, double T, double T1, double T2);
};

// Damped argument combinations entering the per-factor Riccati system.
Complex f1(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2);
Complex f2(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2);

// q(u,t) = i rho (kappa - lambda)/sigma f1 - (1 - rho^2)/2 f1^2 - i/2 f2.
// Requires sigma > 0 (a sigma = 0 factor takes the Gaussian route instead).
Complex q_coeff(const VolFactor& factor, Complex u1, Complex u2, double t, double T1, double T2);

struct FactorOdeSolution {
    Complex A_at_0;      // A(0, T)
    Complex B_at_0;      // B(0, T) = int_0^T kappa theta(t) A(t, T) dt
    Complex A_terminal;  // applied terminal value A(T, T) = i rho/sigma f1(u, T)
};

// Backward integration of
//   dA/dt = kappa A - sigma^2/2 A^2 - q(u,t),  A(T,T) = i rho/sigma f1(u,T),
//   dB/dt = -kappa theta(t) A,                 B(T,T) = 0,
// as one complex system, restarted at every breakpoint of theta. Adaptive
// Dormand-Prince with local relative tolerance `rel_tol`. Throws
// NumericalError (with the failing t) when the Riccati solution blows up,
// i.e. u lies outside the domain of analyticity.
FactorOdeSolution solve_factor_odes(const VolFactor& factor, Complex u1, Complex u2, double T,
                                    double T1, double T2, double rel_tol = 1e-10);

// A(t, T) alone, for diagnostics and cross-checks.
Complex riccati_a(const VolFactor& factor, Complex u1, Complex u2, double t, double T, double T1,
                  double T2, double rel_tol = 1e-10);

// Joint characteristic function of (X_1(T), X_2(T)): product over factors of
//   exp(-i rho/sigma f1(u,0) (v0 + kappa theta_hat_T(lambda)))
//   exp(A(0,T) v0 + B(0,T)),
// sigma = 0 factors contributing their (Gaussian) deterministic-variance
// limit. The theta_hat values are cached across calls.
Complex joint_cf(const ModelConfig& config, const CfArgs& args);

// Single-maturity characteristic function: joint_cf with u2 = 0.
Complex single_cf(const ModelConfig& config, Complex u, double T, double T1);

// CF of the log-prices: Phi(u) = exp(i sum_k u_k ln F(0,Tk)) * phi(u).
Complex log_price_cf(const ModelConfig& config, const CfArgs& args);

// CF of the model with every sigma_j = 0: log-returns are bivariate Gaussian
// with covariance C_km = sum_j int_0^T e^{-lambda_j(Tk-t)} e^{-lambda_j(Tm-t)}
// v_j(t) dt and means -C_kk/2. Rejects configs with any sigma_j > 0.
Complex deterministic_cf(const ModelConfig& config, const CfArgs& args);

// Covariance entry C_km of one deterministic factor (sigma = 0), computed by
// adaptive quadrature of the closed-form variance path.
double deterministic_covariance(const VolFactor& factor, double T, double Tk, double Tm);

// Number of distinct theta_hat transforms currently cached.
std::size_t theta_cache_size();

}  // namespace seasvol
