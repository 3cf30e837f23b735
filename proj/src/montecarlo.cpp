#include "seasvol/montecarlo.hpp"
#include "seasvol/errors.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace seasvol {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

int thread_count(const McSettings& settings) {
    if (settings.threads > 0) return settings.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Precomputed per-step coefficients shared by every path.
struct StepTables {
    int steps;
    double dt;
    double sqrt_dt;
    // [factor][step]
    std::vector<std::vector<double>> theta;
    // [factor][maturity][step]: e^{-lambda (Tm - t_i)} and its square
    std::vector<std::vector<std::vector<double>>> damp;
    std::vector<std::vector<std::vector<double>>> damp2;

    StepTables(const ModelConfig& config, double expiry, const std::vector<double>& maturities,
               int steps_per_year) {
        steps = std::max(1, static_cast<int>(std::ceil(expiry * steps_per_year)));
        dt = expiry / steps;
        sqrt_dt = std::sqrt(dt);
        const std::size_t n = config.factor_count();
        theta.assign(n, std::vector<double>(steps));
        damp.assign(n, {});
        damp2.assign(n, {});
        for (std::size_t j = 0; j < n; ++j) {
            const VolFactor& f = config.factor(j);
            damp[j].assign(maturities.size(), std::vector<double>(steps));
            damp2[j].assign(maturities.size(), std::vector<double>(steps));
            for (int i = 0; i < steps; ++i) {
                const double t = i * dt;
                theta[j][i] = theta_eval(f.seasonality, t);
                for (std::size_t m = 0; m < maturities.size(); ++m) {
                    const double e = std::exp(-f.lambda * (maturities[m] - t));
                    damp[j][m][i] = e;
                    damp2[j][m][i] = e * e;
                }
            }
        }
    }
};

// Runs `body(pair_index, rng)` for every antithetic pair (or single path when
// antithetic is off), distributing blocks over threads. The body must only
// write to slots indexed by its pair, so any schedule gives identical output.
template <typename Body>
void run_paths(long units, const McSettings& settings, const Body& body) {
    const long block = 2048;
    const long blocks = (units + block - 1) / block;
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= blocks) return;
            const long lo = b * block, hi = std::min(units, lo + block);
            for (long k = lo; k < hi; ++k) {
                PathRng rng(settings.seed, static_cast<std::uint64_t>(k));
                body(k, rng);
            }
        }
    };
    const int workers = thread_count(settings);
    if (workers <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// One path of every factor variance and the log-returns of every maturity.
// `flip` negates all increments (antithetic leg). Returns log-returns in
// `log_returns` and tracks the running minimum variance state.
struct PathWorkspace {
    std::vector<double> v;
    std::vector<double> log_returns;
    double min_variance;
};

void simulate_path(const ModelConfig& config, const StepTables& tables, PathRng& rng, bool flip,
                   PathWorkspace& ws) {
    const std::size_t n = config.factor_count();
    const std::size_t m_count = tables.damp[0].size();
    ws.v.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) ws.v[j] = config.factor(j).v0;
    ws.log_returns.assign(m_count, 0.0);
    ws.min_variance = config.factor(0).v0;

    const double sign = flip ? -1.0 : 1.0;
    for (int i = 0; i < tables.steps; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const VolFactor& f = config.factor(j);
            const double g_price = sign * rng.next_normal();
            const double g_indep = sign * rng.next_normal();
            const double vplus = std::max(ws.v[j], 0.0);
            const double vol = std::sqrt(vplus);
            const double db = tables.sqrt_dt * g_price;

            for (std::size_t m = 0; m < m_count; ++m)
                ws.log_returns[m] += tables.damp[j][m][i] * vol * db -
                                     0.5 * tables.damp2[j][m][i] * vplus * tables.dt;

            const double dw = tables.sqrt_dt *
                              (f.rho * g_price + std::sqrt(1.0 - f.rho * f.rho) * g_indep);
            ws.v[j] += f.kappa * (tables.theta[j][i] - vplus) * tables.dt + f.sigma * vol * dw;
            ws.min_variance = std::min(ws.min_variance, ws.v[j]);
        }
    }
}

McEstimate reduce_payoffs(const std::vector<double>& pair_means) {
    const long n = static_cast<long>(pair_means.size());
    double sum = 0.0, sum_sq = 0.0;
    for (double y : pair_means) {
        sum += y;
        sum_sq += y * y;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / std::max<long>(n - 1, 1));
    return {mean, std::sqrt(var / n), n};
}

template <typename Payoff>
McEstimate mc_expectation(const ModelConfig& config, double expiry,
                          const std::vector<double>& maturities, const McSettings& settings,
                          const Payoff& payoff) {
    settings.validate();
    const StepTables tables(config, expiry, maturities, settings.steps_per_year);
    const long legs = settings.antithetic ? 2 : 1;
    const long units = settings.paths / legs;

    std::vector<double> forwards(maturities.size());
    for (std::size_t m = 0; m < maturities.size(); ++m)
        forwards[m] = initial_price(config, maturities[m]);

    std::vector<double> pair_means(units);
    run_paths(units, settings, [&](long k, PathRng& rng) {
        PathWorkspace ws;
        std::vector<double> prices(maturities.size());
        double acc = 0.0;
        for (long leg = 0; leg < legs; ++leg) {
            PathRng leg_rng = rng;  // identical draws, negated on the second leg
            simulate_path(config, tables, leg_rng, leg == 1, ws);
            for (std::size_t m = 0; m < maturities.size(); ++m)
                prices[m] = forwards[m] * std::exp(ws.log_returns[m]);
            acc += payoff(prices);
        }
        pair_means[k] = acc / legs;
    });

    McEstimate est = reduce_payoffs(pair_means);
    est.paths_used = units * legs;
    const double discount = std::exp(-config.rate() * expiry);
    est.value *= discount;
    est.std_error *= discount;
    return est;
}

}  // namespace

void McSettings::validate() const {
    if (paths < 2) throw ConfigError("mc: paths must be >= 2");
    if (steps_per_year < 50) throw ConfigError("mc: steps_per_year must be >= 50");
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t PathRng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double PathRng::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double PathRng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

std::vector<std::vector<double>> simulate_terminal(const ModelConfig& config, double expiry,
                                                   const std::vector<double>& maturities,
                                                   const McSettings& settings) {
    settings.validate();
    for (double m : maturities)
        if (m < expiry) throw ConfigError("mc: every maturity must be >= the simulation horizon");

    const StepTables tables(config, expiry, maturities, settings.steps_per_year);
    const long legs = settings.antithetic ? 2 : 1;
    const long units = settings.paths / legs;

    std::vector<double> forwards(maturities.size());
    for (std::size_t m = 0; m < maturities.size(); ++m)
        forwards[m] = initial_price(config, maturities[m]);

    std::vector<std::vector<double>> samples(maturities.size(),
                                             std::vector<double>(units * legs));
    run_paths(units, settings, [&](long k, PathRng& rng) {
        PathWorkspace ws;
        for (long leg = 0; leg < legs; ++leg) {
            PathRng leg_rng = rng;
            simulate_path(config, tables, leg_rng, leg == 1, ws);
            for (std::size_t m = 0; m < maturities.size(); ++m)
                samples[m][k * legs + leg] = forwards[m] * std::exp(ws.log_returns[m]);
        }
    });
    return samples;
}

McEstimate mc_price_vanilla(const ModelConfig& config, const VanillaSpec& spec,
                            const McSettings& settings) {
    const double sign = spec.is_call ? 1.0 : -1.0;
    return mc_expectation(config, spec.expiry, {spec.futures_maturity}, settings,
                          [&](const std::vector<double>& f) {
                              return std::max(sign * (f[0] - spec.strike), 0.0);
                          });
}

McEstimate mc_price_cso(const ModelConfig& config, const CsoSpec& spec,
                        const McSettings& settings) {
    return mc_expectation(config, spec.expiry, {spec.T1, spec.T2}, settings,
                          [&](const std::vector<double>& f) {
                              return std::max(f[0] - f[1] - spec.strike, 0.0);
                          });
}

ComparisonResult comparison_test(const VolFactor& factor, double theta_min, double horizon,
                                 const McSettings& settings) {
    settings.validate();
    const int steps =
        std::max(1, static_cast<int>(std::ceil(horizon * settings.steps_per_year)));
    const double dt = horizon / steps;
    const double sqrt_dt = std::sqrt(dt);

    std::vector<double> theta(steps);
    for (int i = 0; i < steps; ++i) theta[i] = theta_eval(factor.seasonality, i * dt);

    const long paths = settings.paths;
    const long block = 2048;
    const long blocks = (paths + block - 1) / block;
    std::vector<long> violations(blocks, 0);
    std::vector<double> min_v(blocks, factor.v0);

    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= blocks) return;
            long viol = 0;
            double vmin = factor.v0;
            const long lo = b * block, hi = std::min(paths, lo + block);
            for (long p = lo; p < hi; ++p) {
                PathRng rng(settings.seed, static_cast<std::uint64_t>(p));
                double v = factor.v0, v_const = factor.v0;
                for (int i = 0; i < steps; ++i) {
                    const double dw = sqrt_dt * rng.next_normal();  // shared increment
                    const double vp = std::max(v, 0.0);
                    const double vcp = std::max(v_const, 0.0);
                    v += factor.kappa * (theta[i] - vp) * dt + factor.sigma * std::sqrt(vp) * dw;
                    v_const += factor.kappa * (theta_min - vcp) * dt +
                               factor.sigma * std::sqrt(vcp) * dw;
                    if (v_const > v + 1e-12) ++viol;
                    vmin = std::min(vmin, v);
                }
            }
            violations[b] = viol;
            min_v[b] = vmin;
        }
    };
    const int workers = thread_count(settings);
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    long total_violations = 0;
    double vmin = factor.v0;
    for (long b = 0; b < blocks; ++b) {
        total_violations += violations[b];
        vmin = std::min(vmin, min_v[b]);
    }
    return {static_cast<double>(total_violations) / (static_cast<double>(paths) * steps), vmin};
}

}  // namespace seasvol
