#pragma once

#include "seasvol/model.hpp"

#include <vector>

namespace seasvol {

// Variance path when sigma = 0 and the SDE degenerates to
// v'(t) = kappa (theta(t) - v(t)):  v(t) = e^{-kappa t} (v0 + kappa theta_hat_t(kappa)).
double deterministic_variance(const VolFactor& factor, double t);

// Instantaneous correlation of the returns of F(.,T1) and F(.,T2) in the
// two-factor model, given the current factor variances v1, v2:
//
//            e^{-l1(T1+T2-2t)} v1 + e^{-l2(T1+T2-2t)} v2
//   rho(t) = -------------------------------------------------------------
//            sqrt(e^{-2 l1(T1-t)} v1 + e^{-2 l2(T1-t)} v2) *
//            sqrt(e^{-2 l1(T2-t)} v1 + e^{-2 l2(T2-t)} v2)
//
// Requires t <= T1 < T2 and v1 + v2 > 0; lies in (0, 1].
double instantaneous_correlation(const ModelConfig& config, double t, double T1, double T2,
                                 double v1, double v2);

struct CorrCurve {
    std::vector<double> grid;       // times t
    std::vector<double> values;     // rho(t) with the seasonal model
    std::vector<double> benchmark;  // rho(t) with b = 0 in every factor
    std::vector<double> difference; // values - benchmark
};

// Deterministic-variance correlation term structure on a uniform grid over
// [0, T1] (default 601 nodes). Requires a two-factor config with all
// sigma_j = 0.
CorrCurve corr_term_structure(const ModelConfig& config, double T1, double T2,
                              std::size_t grid_points = 601);

}  // namespace seasvol
