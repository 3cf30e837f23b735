#pragma once

#include <string>
#include <vector>

namespace seasvol {

// Parametric annual patterns for the variance mean-reversion level theta(t).
// All are 1-periodic in t; `a` sets the level, `b` the magnitude of the
// seasonal swing and `t0` the time of year where the pattern peaks.
enum class SeasonalPattern { Constant, Sinusoid, ExpSinusoid, Sawtooth, Triangle, Spiked };

SeasonalPattern pattern_from_string(const std::string& name);
std::string to_string(SeasonalPattern pattern);

struct ThetaBounds {
    double theta_min;
    double theta_max;
};

class SeasonalitySpec {
public:
    // Throws ConfigError when a parameter violates its range or the implied
    // theta_min is not strictly positive (e.g. sinusoid with b >= a).
    SeasonalitySpec(SeasonalPattern pattern, double a, double b = 0.0, double t0 = 0.0);

    static SeasonalitySpec constant(double a) { return {SeasonalPattern::Constant, a}; }

    SeasonalPattern pattern() const { return pattern_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double t0() const { return t0_; }

    // A copy with the seasonal magnitude removed (b = 0); the non-seasonal
    // benchmark used throughout the correlation analytics.
    SeasonalitySpec without_seasonality() const;

    bool operator==(const SeasonalitySpec& o) const {
        return pattern_ == o.pattern_ && a_ == o.a_ && b_ == o.b_ && t0_ == o.t0_;
    }

private:
    SeasonalPattern pattern_;
    double a_;
    double b_;
    double t0_;
};

// theta(t) per the pattern formula, t in years >= 0.
double theta_eval(const SeasonalitySpec& spec, double t);

// Analytic lower/upper bounds of theta over all t; theta_min > 0 by
// construction of the spec.
ThetaBounds theta_bounds(const SeasonalitySpec& spec);

// Times in (0, T) where theta has a jump or kink: t0 + k for the sawtooth and
// spiked patterns, additionally t0 + k +- 1/2 for the triangle. Empty for the
// smooth patterns.
std::vector<double> theta_breakpoints(const SeasonalitySpec& spec, double T);

// The transform  theta_hat_T(lambda) = int_0^T theta(t) e^{lambda t} dt.
// Closed form for Constant/Sinusoid/Sawtooth/Triangle, adaptive quadrature
// for ExpSinusoid/Spiked and whenever |lambda| < 1e-6 (removable singularity
// of the closed forms).
double theta_transform(const SeasonalitySpec& spec, double T, double lambda);

// Independent quadrature evaluation of the same integral, split at every
// breakpoint of theta; tolerance 1e-12 absolute and relative.
double theta_transform_oracle(const SeasonalitySpec& spec, double T, double lambda);

}  // namespace seasvol
