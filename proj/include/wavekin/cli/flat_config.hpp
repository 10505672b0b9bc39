#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wavekin {

/// Flat `key.path = value` text. `#` starts a comment; blank lines are
/// ignored; a repeated key is an error.
class FlatConfig {
public:
    static FlatConfig parse(const std::string& text);
    static FlatConfig load(const std::string& path);

    bool has(const std::string& key) const { return values_.contains(key); }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    /// Keys under `section.` that are not in `known`.
    std::vector<std::string> unknown_keys(const std::string& section, const std::set<std::string>& known) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t v);

/// %.17g
std::string format_real(double v);

}  // namespace wavekin
