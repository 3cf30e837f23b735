#pragma once

#include "seasvol/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace seasvol::cli {

// Exit codes: 0 success, 1 config/usage error, 2 numerical failure.
int run(int argc, const char* const* argv);

// Individual commands, CSV (or key: value lines) written to `out`.
// Exposed so they can be driven directly in tests.

void cmd_price_vanilla(const ModelConfig& model, double strike, double expiry,
                       double futures_maturity, bool is_put, std::ostream& out);

void cmd_price_cso(const ModelConfig& model, double strike, double expiry, double t1, double t2,
                   bool is_put, double damping, std::ostream& out);

void cmd_smile(const ModelConfig& model, double expiry, double futures_maturity,
               const std::vector<double>& strikes, std::ostream& out);

void cmd_term_structure(const ModelConfig& model, int months, std::ostream& out);

void cmd_cso_table(const IniFile& ini, const std::vector<double>& expiries, double leg_gap,
                   const std::vector<double>& strikes, int threads, std::ostream& out);

void cmd_inst_corr(const ModelConfig& model, double t1, double t2, int points,
                   std::ostream& out);

void cmd_implied_corr(const IniFile& ini, const std::vector<double>& expiries, double leg_gap,
                      double strike, int threads, std::ostream& out);

void cmd_mc_validate(const ModelConfig& model, const McSettings& settings, double vanilla_expiry,
                     double cso_expiry, double cso_gap, std::ostream& out);

// 10-significant-digit decimal used in every CSV cell.
std::string csv_number(double value);

}  // namespace seasvol::cli
