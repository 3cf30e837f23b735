#include "seasvol/cli.hpp"
#include "seasvol/correlation.hpp"
#include "seasvol/errors.hpp"
#include "seasvol/spread.hpp"
#include "seasvol/vanilla.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

namespace seasvol::cli {

namespace {

struct CaseModel {
    std::string name;
    ModelConfig model;
};

std::vector<CaseModel> build_cases(const IniFile& ini) {
    std::vector<CaseModel> out;
    for (const ModelCase& c : load_cases(ini)) out.push_back({c.name, apply_case(ini, c)});
    if (out.empty()) throw ConfigError("config: no [cases.*] sections found");
    return out;
}

// Run tasks 0..count-1 on up to `threads` workers; each task writes only its
// own output slot, so results do not depend on the schedule.
template <typename Task>
void parallel_for(long count, int threads, const Task& task) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw > 0 ? static_cast<int>(hw) : 1;
    }
    if (threads == 1 || count <= 1) {
        for (long i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            task(i);
        }
    };
    std::vector<std::thread> pool;
    const int n = static_cast<int>(std::min<long>(threads, count));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

std::vector<double> arithmetic_grid(double start, double step, int count) {
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = start + i * step;
    return grid;
}

}  // namespace

std::string csv_number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.10g", value);
    return buffer;
}

void cmd_price_vanilla(const ModelConfig& model, double strike, double expiry,
                       double futures_maturity, bool is_put, std::ostream& out) {
    const VanillaSpec spec{strike, expiry, futures_maturity, !is_put};
    const PriceResult result = price_vanilla(model, spec);
    char line[64];
    std::snprintf(line, sizeof(line), "price = %.6f\n", result.value);
    out << line;
    try {
        const double vol = black76_implied_vol(result.value,
                                               initial_price(model, futures_maturity), strike,
                                               expiry, model.rate(), spec.is_call);
        std::snprintf(line, sizeof(line), "implied_vol = %.6f\n", vol);
        out << line;
    } catch (const NumericalError&) {
        out << "implied_vol = NA\n";
    }
}

void cmd_price_cso(const ModelConfig& model, double strike, double expiry, double t1, double t2,
                   bool is_put, double damping, std::ostream& out) {
    const CsoSpec spec{expiry, t1, t2, strike};
    CsoKnobs knobs;
    knobs.damping = damping;
    const PriceResult result = is_put ? cso_put(model, spec, knobs) : cso_call(model, spec, knobs);
    char line[64];
    std::snprintf(line, sizeof(line), "price = %.6f\n", result.value);
    out << line;
}

void cmd_smile(const ModelConfig& model, double expiry, double futures_maturity,
               const std::vector<double>& strikes, std::ostream& out) {
    VanillaPricer pricer(model, expiry, futures_maturity);
    const double forward = initial_price(model, futures_maturity);
    out << "strike,implied_vol\n";
    for (double strike : strikes) {
        const PriceResult price = pricer.price(strike);
        const double vol = black76_implied_vol(price.value, forward, strike, expiry,
                                               model.rate(), true);
        out << csv_number(strike) << ',' << csv_number(vol) << '\n';
    }
}

void cmd_term_structure(const ModelConfig& model, int months, std::ostream& out) {
    out << "maturity,implied_vol\n";
    for (int m = 1; m <= months; ++m) {
        const double expiry = m / 12.0;
        const double forward = initial_price(model, expiry);
        const PriceResult price = price_vanilla(model, VanillaSpec{forward, expiry, expiry});
        const double vol =
            black76_implied_vol(price.value, forward, forward, expiry, model.rate(), true);
        out << csv_number(expiry) << ',' << csv_number(vol) << '\n';
    }
}

void cmd_cso_table(const IniFile& ini, const std::vector<double>& expiries, double leg_gap,
                   const std::vector<double>& strikes, int threads, std::ostream& out) {
    const std::vector<CaseModel> cases = build_cases(ini);

    out << "T,T1,T2";
    for (const CaseModel& c : cases)
        for (double k : strikes) out << ',' << c.name << "_K" << csv_number(k);
    out << '\n';

    const long rows = static_cast<long>(expiries.size());
    const long cols = static_cast<long>(cases.size() * strikes.size());
    std::vector<double> table(rows * cols);
    parallel_for(rows * cols, threads, [&](long index) {
        const long row = index / cols;
        const long ci = (index % cols) / static_cast<long>(strikes.size());
        const long ki = (index % cols) % static_cast<long>(strikes.size());
        const double expiry = expiries[row];
        const CsoSpec spec{expiry, expiry, expiry + leg_gap, strikes[ki]};
        table[index] = cso_call(cases[ci].model, spec).value;
    });

    for (long row = 0; row < rows; ++row) {
        const double expiry = expiries[row];
        out << csv_number(expiry) << ',' << csv_number(expiry) << ','
            << csv_number(expiry + leg_gap);
        for (long c = 0; c < cols; ++c) out << ',' << csv_number(table[row * cols + c]);
        out << '\n';
    }
}

void cmd_inst_corr(const ModelConfig& model, double t1, double t2, int points,
                   std::ostream& out) {
    const CorrCurve curve = corr_term_structure(model, t1, t2, points);
    out << "t,correlation,benchmark,difference\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << csv_number(curve.grid[i]) << ',' << csv_number(curve.values[i]) << ','
            << csv_number(curve.benchmark[i]) << ',' << csv_number(curve.difference[i]) << '\n';
}

void cmd_implied_corr(const IniFile& ini, const std::vector<double>& expiries, double leg_gap,
                      double strike, int threads, std::ostream& out) {
    const std::vector<CaseModel> cases = build_cases(ini);

    out << "T";
    for (const CaseModel& c : cases) out << ',' << c.name;
    out << '\n';

    const long rows = static_cast<long>(expiries.size());
    const long cols = static_cast<long>(cases.size());
    std::vector<std::string> cells(rows * cols);
    parallel_for(rows * cols, threads, [&](long index) {
        const long row = index / cols;
        const long ci = index % cols;
        const double expiry = expiries[row];
        const CsoSpec spec{expiry, expiry, expiry + leg_gap, strike};
        try {
            cells[index] = csv_number(implied_correlation(cases[ci].model, spec));
        } catch (const NumericalError&) {
            cells[index] = "NA";
        }
    });

    for (long row = 0; row < rows; ++row) {
        out << csv_number(expiries[row]);
        for (long c = 0; c < cols; ++c) out << ',' << cells[row * cols + c];
        out << '\n';
    }
}

void cmd_mc_validate(const ModelConfig& model, const McSettings& settings, double vanilla_expiry,
                     double cso_expiry, double cso_gap, std::ostream& out) {
    out << "quantity,cf_price,mc_price,mc_stderr,z_score\n";

    const double forward = initial_price(model, vanilla_expiry);
    const VanillaSpec vanilla{forward, vanilla_expiry, vanilla_expiry};
    const double cf_vanilla = price_vanilla(model, vanilla).value;
    const McEstimate mc_vanilla = mc_price_vanilla(model, vanilla, settings);
    out << "vanilla_atm," << csv_number(cf_vanilla) << ',' << csv_number(mc_vanilla.value) << ','
        << csv_number(mc_vanilla.std_error) << ','
        << csv_number((cf_vanilla - mc_vanilla.value) / mc_vanilla.std_error) << '\n';

    const CsoSpec cso{cso_expiry, cso_expiry, cso_expiry + cso_gap, 0.0};
    const double cf_cso = cso_call(model, cso).value;
    const McEstimate mc_cso = mc_price_cso(model, cso, settings);
    out << "cso_k0," << csv_number(cf_cso) << ',' << csv_number(mc_cso.value) << ','
        << csv_number(mc_cso.std_error) << ','
        << csv_number((cf_cso - mc_cso.value) / mc_cso.std_error) << '\n';
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Seasonal stochastic-volatility pricing for commodity futures"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed_override;
    int threads = 0;
    app.add_option("--config", config_path, "model config file")->required();
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--seed", seed_override, "Monte Carlo seed override");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");

    double strike = 100.0, expiry = 0.5, futures_maturity = -1.0, t1 = 0.33, t2 = 0.83;
    double damping = 0.75, leg_gap = 0.5;
    bool is_put = false;
    int months = 36, points = 601;
    double k_min = 80.0, k_max = 120.0, k_step = 5.0;
    double t_start = 1.0 / 3.0, t_step = 0.25;  // monthly grid: 4/12, 7/12, ...
    int t_count = 11;
    double vanilla_expiry = 0.5, cso_expiry = 0.33;

    CLI::App* vanilla = app.add_subcommand("price-vanilla", "price one European futures option");
    vanilla->add_option("--strike", strike)->required();
    vanilla->add_option("--expiry", expiry)->required();
    vanilla->add_option("--futures-maturity", futures_maturity,
                        "defaults to the option expiry");
    vanilla->add_flag("--put", is_put);

    CLI::App* cso = app.add_subcommand("price-cso", "price one calendar spread option");
    cso->add_option("--strike", strike)->required();
    cso->add_option("--expiry", expiry)->required();
    cso->add_option("--t1", t1)->required();
    cso->add_option("--t2", t2)->required();
    cso->add_flag("--put", is_put);
    cso->add_option("--damping", damping);

    CLI::App* smile = app.add_subcommand("smile", "implied-vol smile at one expiry");
    smile->add_option("--expiry", expiry)->required();
    smile->add_option("--futures-maturity", futures_maturity);
    smile->add_option("--k-min", k_min);
    smile->add_option("--k-max", k_max);
    smile->add_option("--k-step", k_step);

    CLI::App* term = app.add_subcommand("term-structure", "monthly ATM implied-vol term structure");
    term->add_option("--months", months);

    CLI::App* table = app.add_subcommand("cso-table", "calendar-spread price table per case");
    table->add_option("--t-start", t_start);
    table->add_option("--t-step", t_step);
    table->add_option("--t-count", t_count);
    table->add_option("--gap", leg_gap);

    CLI::App* inst = app.add_subcommand("inst-corr", "deterministic-variance instantaneous correlation");
    inst->add_option("--t1", t1)->required();
    inst->add_option("--t2", t2)->required();
    inst->add_option("--points", points);

    CLI::App* implied = app.add_subcommand("implied-corr", "implied-correlation term structure per case");
    implied->add_option("--strike", strike)->default_val(0.0);
    implied->add_option("--t-start", t_start);
    implied->add_option("--t-step", t_step);
    implied->add_option("--t-count", t_count);
    implied->add_option("--gap", leg_gap);

    CLI::App* mc = app.add_subcommand("mc-validate", "Monte Carlo vs transform prices");
    mc->add_option("--vanilla-expiry", vanilla_expiry);
    mc->add_option("--cso-expiry", cso_expiry);
    mc->add_option("--gap", leg_gap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const IniFile ini = IniFile::load(config_path);
        const ModelConfig model = load_model(ini);

        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);  // LF line endings everywhere
            if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
        }
        std::ostream& out = out_path.empty() ? std::cout : file;

        if (*vanilla) {
            if (futures_maturity <= 0.0) futures_maturity = expiry;
            cmd_price_vanilla(model, strike, expiry, futures_maturity, is_put, out);
        } else if (*cso) {
            cmd_price_cso(model, strike, expiry, t1, t2, is_put, damping, out);
        } else if (*smile) {
            if (futures_maturity <= 0.0) futures_maturity = expiry;
            std::vector<double> strikes;
            for (double k = k_min; k <= k_max + 1e-9; k += k_step) strikes.push_back(k);
            cmd_smile(model, expiry, futures_maturity, strikes, out);
        } else if (*term) {
            cmd_term_structure(model, months, out);
        } else if (*table) {
            cmd_cso_table(ini, arithmetic_grid(t_start, t_step, t_count), leg_gap,
                          {-10.0, 0.0, 10.0}, threads, out);
        } else if (*inst) {
            cmd_inst_corr(model, t1, t2, points, out);
        } else if (*implied) {
            cmd_implied_corr(ini, arithmetic_grid(t_start, t_step, t_count), leg_gap, strike,
                             threads, out);
        } else if (*mc) {
            McSettings settings = load_mc_settings(ini);
            if (seed_override) settings.seed = *seed_override;
            if (threads > 0) settings.threads = threads;
            cmd_mc_validate(model, settings, vanilla_expiry, cso_expiry, leg_gap, out);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace seasvol::cli
