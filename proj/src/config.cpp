#include <algorithm>
#include <fstream>
#include <sstream>

#include "fsh4/config.hpp"
#include "json.hpp"

namespace fsh4 {

struct Config::Impl {
    nlohmann::json j = nlohmann::json::object();
};

Config::Config() : impl_(std::make_unique<Impl>()) {}
Config::~Config() = default;
Config::Config(Config&&) noexcept = default;
Config& Config::operator=(Config&&) noexcept = default;

namespace {

void check_keys(const nlohmann::json& j, const std::vector<std::string>& allowed) {
    std::vector<std::string> unknown;
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            unknown.push_back(item.key());
    if (!unknown.empty()) {
        std::string msg = "unknown configuration key(s):";
        for (const std::string& k : unknown) msg += " '" + k + "'";
        throw ConfigError(msg);
    }
}

}  // namespace

Config Config::from_text(const std::string& text, const std::vector<std::string>& allowed) {
    Config c;
    try {
        c.impl_->j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("configuration parse error: ") + e.what());
    }
    if (!c.impl_->j.is_object()) throw ConfigError("configuration root must be an object");
    check_keys(c.impl_->j, allowed);
    return c;
}

Config Config::from_file(const std::string& path, const std::vector<std::string>& allowed) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open configuration file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_text(ss.str(), allowed);
}

bool Config::has(const std::string& key) const { return impl_->j.contains(key); }

namespace {

[[noreturn]] void type_error(const std::string& key, const char* want) {
    throw ConfigError("configuration key '" + key + "' must be " + want);
}

}  // namespace

double Config::number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_number()) type_error(key, "a number");
    return v.get<double>();
}

long Config::integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_number_integer()) type_error(key, "an integer");
    return v.get<long>();
}

std::uint64_t Config::uinteger(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        type_error(key, "a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_string()) type_error(key, "a string");
    return v.get<std::string>();
}

bool Config::flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_boolean()) type_error(key, "a boolean");
    return v.get<bool>();
}

std::vector<double> Config::number_list(const std::string& key,
                                        const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = impl_->j.at(key);
    if (!v.is_array()) type_error(key, "an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) type_error(key, "an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

SolutionParams params_from_config(const Config& c) {
    const bool has_ab = c.has("a") || c.has("b");
    if (c.has("alpha") && has_ab)
        throw ConfigError("give either 'alpha' or the pair 'a'/'b', not both");
    const double c0 = c.number("c0", 1.0), c1 = c.number("c1", 1.0), c2 = c.number("c2", 1.0),
                 c3 = c.number("c3", 1.0);
    try {
        if (c.has("alpha")) return SolutionParams::from_angle(c.number("alpha", 0.0), c0, c1, c2, c3);
        return {c.number("a", 0.6), c.number("b", 0.8), c0, c1, c2, c3};
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<std::string> param_keys() { return {"a", "b", "alpha", "c0", "c1", "c2", "c3"}; }

}  // namespace fsh4
