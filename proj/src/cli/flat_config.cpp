#include "wavekin/cli/flat_config.hpp"

#include "wavekin/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wavekin {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ValidationError(key + ": not a number: '" + v + "'");
    }
    if (used != v.size())
        throw ValidationError(key + ": trailing characters in '" + v + "'");
    return d;
}

}  // namespace

FlatConfig FlatConfig::parse(const std::string& text)
{
    FlatConfig c;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(number) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ValidationError("config line " + std::to_string(number) + ": empty key or value");
        if (key.find_first_of(" \t") != std::string::npos)
            throw ValidationError("config line " + std::to_string(number) + ": whitespace in key '" + key + "'");
        if (c.values_.contains(key))
            throw ValidationError("config line " + std::to_string(number) + ": duplicate key '" + key + "'");
        c.values_[key] = value;
    }
    return c;
}

FlatConfig FlatConfig::load(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string FlatConfig::get_string(const std::string& key, const std::string& fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double FlatConfig::get_double(const std::string& key, double fallback) const
{
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(key, it->second);
}

long FlatConfig::get_int(const std::string& key, long fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(it->second, &used);
    } catch (const std::exception&) {
        throw ValidationError(key + ": not an integer: '" + it->second + "'");
    }
    if (used != it->second.size())
        throw ValidationError(key + ": not an integer: '" + it->second + "'");
    return v;
}

bool FlatConfig::get_bool(const std::string& key, bool fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    if (it->second == "true")
        return true;
    if (it->second == "false")
        return false;
    throw ValidationError(key + ": expected true or false, got '" + it->second + "'");
}

std::vector<double> FlatConfig::get_list(const std::string& key, const std::vector<double>& fallback) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(to_double(key, trim(item)));
    return out;
}

std::vector<std::string> FlatConfig::unknown_keys(const std::string& section, const std::set<std::string>& known) const
{
    std::vector<std::string> out;
    const std::string prefix = section + ".";
    for (const auto& [k, v] : values_)
        if (k.starts_with(prefix) && !known.contains(k.substr(prefix.size())))
            out.push_back(k);
    return out;
}

std::uint64_t fnv1a64(const std::string& text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace wavekin
