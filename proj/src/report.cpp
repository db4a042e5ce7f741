#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fsh4/report.hpp"

namespace fsh4 {

CheckRecord& Report::add(const std::string& name, const std::string& equation,
                         double max_residual, double tolerance, long samples) {
    checks.push_back({name, equation, max_residual, tolerance, max_residual <= tolerance, samples});
    return checks.back();
}

CheckRecord& Report::add_flag(const std::string& name, const std::string& equation, bool pass,
                              double measured, long samples) {
    checks.push_back({name, equation, measured, 0.0, pass, samples});
    return checks.back();
}

bool Report::all_pass() const {
    for (const CheckRecord& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

}  // namespace

std::string to_json(const Report& r) {
    std::string out;
    out += "{\n  \"command\": ";
    append_escaped(out, r.command);
    out += ",\n  \"seed\": " + std::to_string(r.seed);
    out += ",\n  \"all_pass\": ";
    out += r.all_pass() ? "true" : "false";
    out += ",\n  \"checks\": [";
    for (size_t i = 0; i < r.checks.size(); ++i) {
        const CheckRecord& c = r.checks[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"name\": ";
        append_escaped(out, c.name);
        out += ", \"equation\": ";
        append_escaped(out, c.equation);
        out += ", \"max_residual\": " + format_full(c.max_residual);
        out += ", \"tolerance\": " + format_full(c.tolerance);
        out += ", \"pass\": ";
        out += c.pass ? "true" : "false";
        out += ", \"samples\": " + std::to_string(c.samples);
        out += "}";
    }
    out += "\n  ]\n}\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace fsh4
