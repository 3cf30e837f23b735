#include "seasvol/cli.hpp"
#include "seasvol/config.hpp"
#include "seasvol/errors.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace seasvol;

namespace {

const char* kMinimalConfig = R"(
# comment line
[model]
rate = 0.01

[factor.1]
lambda = 1.5
kappa = 0.9
sigma = 1.1   ; trailing comment
rho = -0.3
v0 = 0.08
pattern = sawtooth
a = 0.12
b = 0.2
t0 = 0.25

[market]
curve = 0.5:98.0, 1.5:104.0

[mc]
paths = 5000
steps_per_year = 120
seed = 7
antithetic = false
)";

IniFile parse_string(const std::string& text) {
    std::istringstream in(text);
    return IniFile::parse(in);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("ini parsing and model loading") {
    const IniFile ini = parse_string(kMinimalConfig);
    const ModelConfig model = load_model(ini);
    CHECK(model.rate() == 0.01);
    CHECK(model.factor_count() == 1);
    CHECK(model.factor(0).lambda == 1.5);
    CHECK(model.factor(0).sigma == 1.1);
    CHECK(model.factor(0).seasonality.pattern() == SeasonalPattern::Sawtooth);
    CHECK(model.factor(0).seasonality.t0() == 0.25);
    CHECK(initial_price(model, 1.0) == doctest::Approx(101.0));

    const McSettings mc = load_mc_settings(ini);
    CHECK(mc.paths == 5000);
    CHECK(mc.steps_per_year == 120);
    CHECK(mc.seed == 7);
    CHECK_FALSE(mc.antithetic);
}

TEST_CASE("malformed configs fail with location or field information") {
    CHECK_THROWS_AS(parse_string("[model\nrate = 1"), ConfigError);
    CHECK_THROWS_AS(parse_string("key_without_section = 1"), ConfigError);
    CHECK_THROWS_AS(parse_string("[model]\nnot a key value line"), ConfigError);

    try {
        const IniFile ini = parse_string(std::string(kMinimalConfig) + "\n[factor.2]\nlambda = 1\n");
        load_model(ini);
        FAIL("incomplete factor.2 must be rejected");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("kappa") != std::string::npos);
    }
}

TEST_CASE("case overrides rebuild the targeted factor") {
    std::string text(kMinimalConfig);
    text += "\n[cases.low]\nfactor.1.b = 0.05\n\n[cases.high]\nfactor.1.b = 0.4\n";
    const IniFile ini = parse_string(text);
    const auto cases = load_cases(ini);
    REQUIRE(cases.size() == 2);
    // std::map orders sections alphabetically: "high" before "low"
    CHECK(cases[0].name == "high");
    const ModelConfig high = apply_case(ini, cases[0]);
    const ModelConfig low = apply_case(ini, cases[1]);
    CHECK(high.factor(0).seasonality.b() == 0.4);
    CHECK(low.factor(0).seasonality.b() == 0.05);
    CHECK(high.factor(0).lambda == 1.5);  // untouched fields survive

    CHECK_THROWS_AS(apply_case(ini, ModelCase{"x", {{"factor.3.b", "0.1"}}}), ConfigError);
    CHECK_THROWS_AS(apply_case(ini, ModelCase{"x", {{"factor.1.nope", "0.1"}}}), ConfigError);
}

TEST_CASE("duplicate case names are rejected") {
    std::string text(kMinimalConfig);
    text += "\n[cases.a]\nname = same\nfactor.1.b = 0.1\n\n[cases.b]\nname = same\nfactor.1.b = 0.2\n";
    CHECK_THROWS_AS(load_cases(parse_string(text)), ConfigError);
}

TEST_CASE("csv cells round-trip through text at full precision") {
    for (double v : {0.1234567890123, 101.0, 3.3333333333333335, 1e-7}) {
        const std::string cell = cli::csv_number(v);
        const double back = std::strtod(cell.c_str(), nullptr);
        CHECK(cli::csv_number(back) == cell);
    }
}

TEST_CASE("smile command emits a parseable monotone header and rows") {
    const IniFile ini = IniFile::load(std::string(SEASVOL_CONFIG_DIR) + "/table1_sinusoid.cfg");
    const ModelConfig model = load_model(ini);
    std::ostringstream out;
    cli::cmd_smile(model, 0.5, 0.5, {90.0, 100.0, 110.0}, out);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"strike", "implied_vol"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 2);
        const double vol = std::strtod(rows[i][1].c_str(), nullptr);
        CHECK(vol > 0.0);
        CHECK(vol < 1.0);
    }
}

TEST_CASE("inst-corr command writes the four expected columns") {
    const IniFile ini = IniFile::load(std::string(SEASVOL_CONFIG_DIR) + "/table2_case1.cfg");
    const ModelConfig model = load_model(ini);
    std::ostringstream out;
    cli::cmd_inst_corr(model, 0.75, 1.25, 5, out);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"t", "correlation", "benchmark", "difference"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double corr = std::strtod(rows[i][1].c_str(), nullptr);
        const double bench = std::strtod(rows[i][2].c_str(), nullptr);
        const double diff = std::strtod(rows[i][3].c_str(), nullptr);
        CHECK(corr == doctest::Approx(bench + diff).epsilon(1e-12));
        CHECK(std::abs(corr) <= 1.0 + 1e-12);
    }
}

TEST_CASE("identical cases produce identical table columns") {
    std::string text = R"(
[model]
rate = 0.0
[factor.1]
lambda = 2.0
kappa = 0.8
sigma = 1.2
rho = -0.25
v0 = 0.10
pattern = sinusoid
a = 0.25
b = 0.15
t0 = 0.58333333333333333
[factor.2]
lambda = 0.5
kappa = 0.8
sigma = 0.9
rho = -0.25
v0 = 0.04
pattern = sinusoid
a = 0.10
b = 0.0
t0 = 0.58333333333333333
[market]
curve = 100.0
[cases.a]
factor.1.b = 0.15
[cases.b]
factor.1.b = 0.15
)";
    const IniFile ini = parse_string(text);
    std::ostringstream out;
    cli::cmd_cso_table(ini, {0.5}, 0.5, {0.0}, 2, out);
    const auto rows = parse_csv(out.str());
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[1].size() == 5);  // T, T1, T2, a, b
    CHECK(rows[1][3] == rows[1][4]);
}

TEST_CASE("price-vanilla command prints six-decimal price and vol") {
    const IniFile ini = IniFile::load(std::string(SEASVOL_CONFIG_DIR) + "/table1_sinusoid.cfg");
    const ModelConfig model = load_model(ini);
    std::ostringstream out;
    cli::cmd_price_vanilla(model, 100.0, 0.5, 0.5, false, out);
    const std::string text = out.str();
    CHECK(text.find("price = ") != std::string::npos);
    CHECK(text.find("implied_vol = 0.") != std::string::npos);
}
