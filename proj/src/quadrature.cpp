#include "seasvol/quadrature.hpp"
#include "seasvol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace seasvol {

namespace {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights
// (QUADPACK dqk15 values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double absc = half * kXgk[j];
        const double f1 = f(center - absc);
        const double f2 = f(center + absc);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }

    result_gauss *= half;
    result_kronrod *= half;

    // QUADPACK-style sharpened error estimate
    double err = std::abs(result_kronrod - result_gauss);
    if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
    return {a, b, result_kronrod, err};
}

QuadratureResult adaptive(const std::function<double(double)>& f,
                          const std::vector<double>& edges,
                          double abs_tol, double rel_tol, int max_intervals) {
    std::priority_queue<Segment> segments;
    double total = 0.0, total_err = 0.0;
    int evals = 0, count = 0;

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        Segment s = evaluate_segment(f, edges[i], edges[i + 1]);
        evals += 15;
        ++count;
        total += s.value;
        total_err += s.error;
        segments.push(s);
    }

    auto tolerance = [&] { return std::max(abs_tol, rel_tol * std::abs(total)); };

    while (total_err > tolerance() && count < max_intervals) {
        Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval too small to split further; keep its error and move on
            segments.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Segment left = evaluate_segment(f, worst.a, mid);
        Segment right = evaluate_segment(f, mid, worst.b);
        evals += 30;
        ++count;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
    }

    if (total_err > tolerance())
        throw NumericalError("quadrature did not converge: achieved error " +
                                 std::to_string(total_err) + " > tolerance " +
                                 std::to_string(tolerance()),
                             total_err);

    return {total, total_err, evals, count};
}

}  // namespace

QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
    Segment s = evaluate_segment(f, a, b);
    return {s.value, s.error, 15, 1};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_intervals) {
    if (b <= a) return {0.0, 0.0, 0, 0};
    return adaptive(f, {a, b}, abs_tol, rel_tol, max_intervals);
}

QuadratureResult integrate_with_breakpoints(const std::function<double(double)>& f,
                                            double a, double b,
                                            const std::vector<double>& breakpoints,
                                            double abs_tol, double rel_tol, int max_intervals) {
    if (b <= a) return {0.0, 0.0, 0, 0};
    std::vector<double> edges{a};
    std::vector<double> pts(breakpoints);
    std::sort(pts.begin(), pts.end());
    for (double p : pts)
        if (p > a && p < b && p > edges.back()) edges.push_back(p);
    edges.push_back(b);
    return adaptive(f, edges, abs_tol, rel_tol, max_intervals);
}

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f,
                                         double panel_width, double abs_tol, double tail_tol,
                                         int tail_panels, int max_panels) {
    QuadratureResult out;
    int quiet = 0;
    for (int p = 0; p < max_panels; ++p) {
        QuadratureResult panel =
            integrate(f, p * panel_width, (p + 1) * panel_width, abs_tol, 0.0);
        out.value += panel.value;
        out.error_estimate += panel.error_estimate;
        out.evaluations += panel.evaluations;
        out.intervals += panel.intervals;
        quiet = (std::abs(panel.value) < tail_tol) ? quiet + 1 : 0;
        if (quiet >= tail_panels) return out;
    }
    throw NumericalError("semi-infinite quadrature: integrand tail still above " +
                             std::to_string(tail_tol) + " after " +
                             std::to_string(max_panels) + " panels",
                         out.error_estimate, max_panels * panel_width);
}

}  // namespace seasvol
