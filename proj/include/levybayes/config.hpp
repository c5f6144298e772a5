// Flat sectioned key-value configuration files ("[section]" headers,
// "key = value" lines, '#'/';' comments). The same representation doubles as
// the run manifest: values the run resolved are written back with full
// precision, so a manifest reloads to the identical configuration.
#ifndef LEVYBAYES_CONFIG_HPP
#define LEVYBAYES_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace levybayes {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config load(const std::string& path);
    static Config parse(std::istream& is, const std::string& origin = "<stream>");

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    std::int64_t get_int(const std::string& section, const std::string& key) const;
    bool get_bool(const std::string& section, const std::string& key) const;
    std::vector<double> get_list(const std::string& section,
                                 const std::string& key) const;

    void set_string(const std::string& section, const std::string& key,
                    const std::string& value);
    void set_double(const std::string& section, const std::string& key,
                    double value);  // %.17g, round-trip exact
    void set_int(const std::string& section, const std::string& key,
                 std::int64_t value);
    void erase_section(const std::string& section);

    // Resolve-with-default: returns the stored value, writing the default
    // first when the key is absent. Runs use these so the manifest ends up
    // fully resolved.
    std::string resolve_string(const std::string& section, const std::string& key,
                               const std::string& fallback);
    double resolve_double(const std::string& section, const std::string& key,
                          double fallback);
    std::int64_t resolve_int(const std::string& section, const std::string& key,
                             std::int64_t fallback);
    std::vector<double> resolve_list(const std::string& section,
                                     const std::string& key,
                                     const std::string& fallback);

    /// Deterministic output: sections and keys in lexicographic order.
    void write(std::ostream& os) const;
    void save(const std::string& path) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace levybayes

#endif
