#pragma once

#include "seasvol/model.hpp"
#include "seasvol/spread.hpp"
#include "seasvol/vanilla.hpp"

#include <cstdint>
#include <vector>

namespace seasvol {

struct McSettings {
    long paths = 100000;
    int steps_per_year = 400;
    std::uint64_t seed = 42;
    bool antithetic = true;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long paths_used = 0;
};

// Counter-seeded xoshiro256++, one independent stream per path so estimates
// are bit-identical for any thread count.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double next_uniform();  // in (0, 1]
    double next_normal();   // Box-Muller, pairwise

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Terminal futures prices F(T, Tm) for every requested maturity, simulated
// with the log-Euler scheme (left-point variance in drift and diffusion) and
// full-truncation Euler for each variance factor. samples[m][p] is path p of
// maturity m. Antithetic pairing applies when enabled.
std::vector<std::vector<double>> simulate_terminal(const ModelConfig& config, double expiry,
                                                   const std::vector<double>& maturities,
                                                   const McSettings& settings);

McEstimate mc_price_vanilla(const ModelConfig& config, const VanillaSpec& spec,
                            const McSettings& settings);

McEstimate mc_price_cso(const ModelConfig& config, const CsoSpec& spec,
                        const McSettings& settings);

struct ComparisonResult {
    double violation_fraction;  // share of (path, step) with v_const > v_seasonal + 1e-12
    double min_variance;        // smallest seasonal-variance state seen
};

// Couples the seasonal factor with its constant-theta_min benchmark on shared
// Brownian increments and counts comparison-property violations (which can
// only stem from discretization).
ComparisonResult comparison_test(const VolFactor& factor, double theta_min, double horizon,
                                 const McSettings& settings);

}  // namespace seasvol
