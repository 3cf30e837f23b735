#pragma once

#include <functional>
#include <vector>

namespace seasvol {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    int evaluations = 0;
    int intervals = 0;
};

// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b].
// Converges when error <= max(abs_tol, rel_tol * |value|); throws
// NumericalError with the achieved tolerance otherwise.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, double rel_tol = 1e-12,
                           int max_intervals = 2000);

// Same, but the initial subdivision is seeded with the given interior
// breakpoints so the rule never straddles a kink or jump of the integrand.
// Breakpoints outside (a, b) are ignored.
QuadratureResult integrate_with_breakpoints(const std::function<double(double)>& f,
                                            double a, double b,
                                            const std::vector<double>& breakpoints,
                                            double abs_tol = 1e-12, double rel_tol = 1e-12,
                                            int max_intervals = 2000);

// Integral of f over [0, inf), for integrands that decay to zero.
// Works panel by panel ([0,w], [w,2w], ...), each panel adaptive, and stops
// once `tail_panels` consecutive panels contribute less than tail_tol in
// absolute value. Throws NumericalError if the tail never dies out.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double panel_width = 8.0,
                                         double abs_tol = 1e-11,
                                         double tail_tol = 1e-12,
                                         int tail_panels = 3,
                                         int max_panels = 400);

// Single non-adaptive 15-point Gauss-Kronrod application. Returned error is
// the |K15 - G7| difference. Building block for the adaptive drivers and
// occasionally useful on its own for smooth integrands.
QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

}  // namespace seasvol
