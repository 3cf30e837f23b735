#pragma once

#include "seasvol/model.hpp"
#include "seasvol/montecarlo.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace seasvol {

// Flat INI-style config: [section] headers, key = value lines, '#' or ';'
// comments. Section and key lookups are case-sensitive.
class IniFile {
public:
    static IniFile parse(std::istream& in);
    static IniFile load(const std::string& path);

    bool has_section(const std::string& section) const;
    bool has_key(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    std::vector<std::string> sections_with_prefix(const std::string& prefix) const;
    const std::map<std::string, std::string>& section(const std::string& name) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// A named variant of the base model: parameter overrides of the form
// "factor.<j>.<param> = value" from a [cases.<name>] section.
struct ModelCase {
    std::string name;
    std::map<std::string, std::string> overrides;
};

ModelConfig load_model(const IniFile& ini);
McSettings load_mc_settings(const IniFile& ini);
std::vector<ModelCase> load_cases(const IniFile& ini);
ModelConfig apply_case(const IniFile& ini, const ModelCase& model_case);

}  // namespace seasvol
