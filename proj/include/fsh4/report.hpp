#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fsh4 {

/// One verification record: what was measured, the identity tag it traces to,
/// and the pass verdict. For threshold checks pass means
/// max_residual <= tolerance; flag records store the verdict directly.
struct CheckRecord {
    std::string name;
    std::string equation;  // tag of the identity being checked, e.g. "3.4"
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long samples = 0;
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;

    /// Threshold record: pass iff max_residual <= tolerance.
    CheckRecord& add(const std::string& name, const std::string& equation, double max_residual,
                     double tolerance, long samples);
    /// Flag record: verdict supplied by the caller (used for structural checks
    /// and negative controls, where "pass" means the control misbehaved as it
    /// should).
    CheckRecord& add_flag(const std::string& name, const std::string& equation, bool pass,
                          double measured, long samples);

    bool all_pass() const;
};

/// Full-precision decimal form of a double (17 significant digits); parses
/// back to the identical bit pattern.
std::string format_full(double x);

/// Deterministic JSON rendering: fixed key order, fixed spacing, doubles via
/// format_full. Byte-identical for identical report contents.
std::string to_json(const Report& r);

/// Writes content to path; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fsh4
