#include "seasvol/config.hpp"
#include "seasvol/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace seasvol {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& where) {
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("config: '" + where + "' is not a number: '" + text + "'");
    return value;
}

// "100" (flat) or "T:price, T:price, ..."
std::vector<CurvePoint> parse_curve(const std::string& text) {
    std::vector<CurvePoint> curve;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            curve.emplace_back(0.0, parse_double(item, "market.curve"));
        } else {
            curve.emplace_back(parse_double(trim(item.substr(0, colon)), "market.curve"),
                               parse_double(trim(item.substr(colon + 1)), "market.curve"));
        }
    }
    if (curve.empty()) throw ConfigError("config: 'market.curve' is empty");
    return curve;
}

struct FactorParams {
    double lambda, kappa, sigma, rho, v0, a, b, t0;
    std::string pattern;
};

FactorParams read_factor(const IniFile& ini, const std::string& section) {
    FactorParams p;
    p.lambda = ini.get_double(section, "lambda");
    p.kappa = ini.get_double(section, "kappa");
    p.sigma = ini.get_double(section, "sigma");
    p.rho = ini.get_double(section, "rho");
    p.v0 = ini.get_double(section, "v0");
    p.pattern = ini.get_string(section, "pattern", "constant");
    p.a = ini.get_double(section, "a");
    p.b = ini.get_double(section, "b", 0.0);
    p.t0 = ini.get_double(section, "t0", 0.0);
    return p;
}

VolFactor build_factor(const FactorParams& p) {
    return VolFactor(p.lambda, p.kappa, p.sigma, p.rho, p.v0,
                     SeasonalitySpec(pattern_from_string(p.pattern), p.a, p.b, p.t0));
}

}  // namespace

IniFile IniFile::parse(std::istream& in) {
    IniFile ini;
    std::string line, current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(line_no));
            current = trim(line.substr(1, line.size() - 2));
            ini.sections_[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " +
                              std::to_string(line_no));
        if (current.empty())
            throw ConfigError("config: key outside any [section] at line " +
                              std::to_string(line_no));
        ini.sections_[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return ini;
}

IniFile IniFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse(in);
}

bool IniFile::has_section(const std::string& section) const {
    return sections_.count(section) > 0;
}

bool IniFile::has_key(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

std::string IniFile::get_string(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end())
        throw ConfigError("config: missing section [" + section + "]");
    auto kv = it->second.find(key);
    if (kv == it->second.end())
        throw ConfigError("config: missing key '" + key + "' in section [" + section + "]");
    return kv->second;
}

std::string IniFile::get_string(const std::string& section, const std::string& key,
                                const std::string& fallback) const {
    return has_key(section, key) ? get_string(section, key) : fallback;
}

double IniFile::get_double(const std::string& section, const std::string& key) const {
    return parse_double(get_string(section, key), section + "." + key);
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
    return has_key(section, key) ? get_double(section, key) : fallback;
}

long IniFile::get_long(const std::string& section, const std::string& key, long fallback) const {
    if (!has_key(section, key)) return fallback;
    return static_cast<long>(get_double(section, key));
}

bool IniFile::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has_key(section, key)) return fallback;
    const std::string v = get_string(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: '" + section + "." + key + "' must be a boolean, got '" + v + "'");
}

std::vector<std::string> IniFile::sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, _] : sections_)
        if (name.rfind(prefix, 0) == 0) out.push_back(name);
    return out;
}

const std::map<std::string, std::string>& IniFile::section(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) throw ConfigError("config: missing section [" + name + "]");
    return it->second;
}

ModelConfig load_model(const IniFile& ini) {
    std::vector<VolFactor> factors;
    for (int j = 1;; ++j) {
        const std::string section = "factor." + std::to_string(j);
        if (!ini.has_section(section)) break;
        factors.push_back(build_factor(read_factor(ini, section)));
    }
    if (factors.empty()) throw ConfigError("config: no [factor.1] section found");

    const double rate = ini.get_double("model", "rate", 0.0);
    const std::vector<CurvePoint> curve =
        parse_curve(ini.get_string("market", "curve", "100.0"));
    return ModelConfig(std::move(factors), rate, curve);
}

McSettings load_mc_settings(const IniFile& ini) {
    McSettings settings;
    settings.paths = ini.get_long("mc", "paths", settings.paths);
    settings.steps_per_year =
        static_cast<int>(ini.get_long("mc", "steps_per_year", settings.steps_per_year));
    settings.seed = static_cast<std::uint64_t>(ini.get_long("mc", "seed", 42));
    settings.antithetic = ini.get_bool("mc", "antithetic", settings.antithetic);
    return settings;
}

std::vector<ModelCase> load_cases(const IniFile& ini) {
    std::vector<ModelCase> cases;
    for (const std::string& section : ini.sections_with_prefix("cases.")) {
        ModelCase c;
        c.name = section.substr(6);
        for (const auto& [key, value] : ini.section(section)) {
            if (key == "name")
                c.name = value;
            else
                c.overrides[key] = value;
        }
        cases.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < cases.size(); ++i)
        for (std::size_t j = i + 1; j < cases.size(); ++j)
            if (cases[i].name == cases[j].name)
                throw ConfigError("config: duplicate case name '" + cases[i].name + "'");
    return cases;
}

ModelConfig apply_case(const IniFile& ini, const ModelCase& model_case) {
    std::vector<FactorParams> params;
    for (int j = 1;; ++j) {
        const std::string section = "factor." + std::to_string(j);
        if (!ini.has_section(section)) break;
        params.push_back(read_factor(ini, section));
    }
    if (params.empty()) throw ConfigError("config: no [factor.1] section found");

    for (const auto& [key, value] : model_case.overrides) {
        // key shape: factor.<j>.<param>
        if (key.rfind("factor.", 0) != 0)
            throw ConfigError("config: case override '" + key + "' must target factor.<j>.<param>");
        const auto second_dot = key.find('.', 7);
        if (second_dot == std::string::npos)
            throw ConfigError("config: case override '" + key + "' must target factor.<j>.<param>");
        const std::size_t index = std::strtoul(key.substr(7, second_dot - 7).c_str(), nullptr, 10);
        if (index < 1 || index > params.size())
            throw ConfigError("config: case override '" + key + "' references unknown factor");
        FactorParams& p = params[index - 1];
        const std::string param = key.substr(second_dot + 1);
        if (param == "pattern") {
            p.pattern = value;
            continue;
        }
        const double number = parse_double(value, key);
        if (param == "lambda") p.lambda = number;
        else if (param == "kappa") p.kappa = number;
        else if (param == "sigma") p.sigma = number;
        else if (param == "rho") p.rho = number;
        else if (param == "v0") p.v0 = number;
        else if (param == "a") p.a = number;
        else if (param == "b") p.b = number;
        else if (param == "t0") p.t0 = number;
        else throw ConfigError("config: unknown factor parameter '" + param + "' in case override");
    }

    std::vector<VolFactor> factors;
    factors.reserve(params.size());
    for (const FactorParams& p : params) factors.push_back(build_factor(p));
    const double rate = ini.get_double("model", "rate", 0.0);
    return ModelConfig(std::move(factors), rate,
                       parse_curve(ini.get_string("market", "curve", "100.0")));
}

}  // namespace seasvol
