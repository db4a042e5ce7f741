#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsh4/closed_forms.hpp"

namespace fsh4 {

/// Raised for malformed scenario files, unknown keys, or type mismatches;
/// the CLI maps it to the usage/configuration exit code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key-value scenario configuration backed by a JSON object. Keys not in
/// the per-command whitelist are hard errors (fail-fast on typos).
class Config {
public:
    Config();
    ~Config();
    Config(Config&&) noexcept;
    Config& operator=(Config&&) noexcept;

    static Config from_file(const std::string& path, const std::vector<std::string>& allowed);
    static Config from_text(const std::string& text, const std::vector<std::string>& allowed);

    bool has(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    long integer(const std::string& key, long fallback) const;
    std::uint64_t uinteger(const std::string& key, std::uint64_t fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::vector<double> number_list(const std::string& key,
                                    const std::vector<double>& fallback) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Solution constants from a scenario: either the pair (a, b) on the unit
/// circle or the angle `alpha` (mutually exclusive), plus c0..c3.
/// Defaults: (a, b) = (0.6, 0.8), c0..c3 = 1.
SolutionParams params_from_config(const Config& c);

/// Keys understood by params_from_config; commands append their own.
std::vector<std::string> param_keys();

}  // namespace fsh4
