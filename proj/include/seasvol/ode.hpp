#pragma once

#include "seasvol/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace seasvol {

// Adaptive Dormand-Prince 5(4) for small complex-valued systems. Integrates
// y' = f(t, y) from t0 forward to t1 (t1 > t0). Throws NumericalError on
// step-size underflow, reporting the t where the solution blew up.
template <std::size_t N, typename Rhs>
std::array<std::complex<double>, N> integrate_dopri5(const Rhs& rhs, double t0, double t1,
                                                     std::array<std::complex<double>, N> y,
                                                     double rel_tol = 1e-10,
                                                     double abs_tol = 1e-12) {
    using State = std::array<std::complex<double>, N>;

    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // 5th-minus-4th order error coefficients
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (t1 <= t0) return y;

    double t = t0;
    double h = (t1 - t0) / 16.0;
    State k1 = rhs(t, y);

    const int max_steps = 1000000;
    for (int step = 0; step < max_steps && t < t1; ++step) {
        if (t + h > t1) h = t1 - t;
        if (!(h > 1e-14 * std::max(1.0, std::abs(t))))
            throw NumericalError(
                "ode: step size underflow at t = " + std::to_string(t) +
                    " (characteristic-function argument outside the analytic domain)",
                0.0, t);

        State y2, y3, y4, y5, y6, ynew;
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * (a21 * k1[i]);
        State k2 = rhs(t + h / 5.0, y2);
        for (std::size_t i = 0; i < N; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        State k3 = rhs(t + 3.0 * h / 10.0, y3);
        for (std::size_t i = 0; i < N; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        State k4 = rhs(t + 4.0 * h / 5.0, y4);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        State k5 = rhs(t + 8.0 * h / 9.0, y5);
        for (std::size_t i = 0; i < N; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        State k6 = rhs(t + h, y6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        State k7 = rhs(t + h, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::complex<double> e =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale =
                abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(e) / scale);
        }

        if (!std::isfinite(err))
            throw NumericalError("ode: non-finite state at t = " + std::to_string(t), 0.0, t);

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    if (t < t1)
        throw NumericalError("ode: maximum step count exceeded at t = " + std::to_string(t), 0.0,
                             t);
    return y;
}

}  // namespace seasvol
