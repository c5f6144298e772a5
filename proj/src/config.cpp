#include "levybayes/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace levybayes {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    return parse(is, path);
}

Config Config::parse(std::istream& is, const std::string& origin) {
    Config cfg;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) +
                              ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    return sec != sections_.end() && sec->second.count(key) > 0;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec != sections_.end()) {
        const auto it = sec->second.find(key);
        if (it != sec->second.end()) return it->second;
    }
    throw ConfigError("missing config key [" + section + "] " + key);
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
    const std::string raw = get_string(section, key);
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError("config key [" + section + "] " + key +
                          " is not a number: " + raw);
    return v;
}

std::int64_t Config::get_int(const std::string& section,
                             const std::string& key) const {
    const std::string raw = get_string(section, key);
    char* end = nullptr;
    const long long v = std::strtoll(raw.c_str(), &end, 10);
    if (end == raw.c_str() || *end != '\0')
        throw ConfigError("config key [" + section + "] " + key +
                          " is not an integer: " + raw);
    return v;
}

bool Config::get_bool(const std::string& section, const std::string& key) const {
    const std::string raw = get_string(section, key);
    if (raw == "true" || raw == "1" || raw == "yes") return true;
    if (raw == "false" || raw == "0" || raw == "no") return false;
    throw ConfigError("config key [" + section + "] " + key +
                      " is not a boolean: " + raw);
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key) const {
    const std::string raw = get_string(section, key);
    std::vector<double> values;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("config key [" + section + "] " + key +
                              " has a non-numeric element: " + item);
        values.push_back(v);
    }
    if (values.empty())
        throw ConfigError("config key [" + section + "] " + key + " is empty");
    return values;
}

void Config::set_string(const std::string& section, const std::string& key,
                        const std::string& value) {
    sections_[section][key] = value;
}

void Config::set_double(const std::string& section, const std::string& key,
                        double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    set_string(section, key, buf);
}

void Config::set_int(const std::string& section, const std::string& key,
                     std::int64_t value) {
    set_string(section, key, std::to_string(value));
}

void Config::erase_section(const std::string& section) {
    sections_.erase(section);
}

std::string Config::resolve_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) {
    if (!has(section, key)) set_string(section, key, fallback);
    return get_string(section, key);
}

double Config::resolve_double(const std::string& section, const std::string& key,
                              double fallback) {
    if (!has(section, key)) set_double(section, key, fallback);
    return get_double(section, key);
}

std::int64_t Config::resolve_int(const std::string& section,
                                 const std::string& key, std::int64_t fallback) {
    if (!has(section, key)) set_int(section, key, fallback);
    return get_int(section, key);
}

std::vector<double> Config::resolve_list(const std::string& section,
                                         const std::string& key,
                                         const std::string& fallback) {
    if (!has(section, key)) set_string(section, key, fallback);
    return get_list(section, key);
}

void Config::write(std::ostream& os) const {
    bool first = true;
    for (const auto& [name, entries] : sections_) {
        if (!first) os << '\n';
        first = false;
        os << '[' << name << "]\n";
        for (const auto& [key, value] : entries)
            os << key << " = " << value << '\n';
    }
}

void Config::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write config file: " + path);
    write(os);
    if (!os) throw ConfigError("failed writing config file: " + path);
}

}  // namespace levybayes
