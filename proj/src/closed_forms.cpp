#include "fsh4/closed_forms.hpp"

namespace fsh4 {

SurfaceFamily surface_family_from_string(const std::string& id) {
    if (id == "sphere_isothermal") return SurfaceFamily::kSphereIsothermal;
    if (id == "sphere_angular") return SurfaceFamily::kSphereAngular;
    if (id == "ruling_normal") return SurfaceFamily::kRulingNormal;
    throw std::invalid_argument("unknown family identifier: " + id);
}

std::string to_string(SurfaceFamily f) {
    switch (f) {
        case SurfaceFamily::kSphereIsothermal: return "sphere_isothermal";
        case SurfaceFamily::kSphereAngular: return "sphere_angular";
        case SurfaceFamily::kRulingNormal: return "ruling_normal";
    }
    throw std::logic_error("unreachable");
}

Jet2Surface analytic_jet2(SurfaceFamily f, const SolutionParams& p, double u, double v) {
    switch (f) {
        case SurfaceFamily::kSphereIsothermal:
            return jet2_of([&p](auto x, auto y) { return sphere_isothermal(p, x, y); }, u, v);
        case SurfaceFamily::kSphereAngular:
            return jet2_of([&p](auto x, auto y) { return sphere_angular(p, x, y); }, u, v);
        case SurfaceFamily::kRulingNormal:
            return jet2_of([&p](auto x, auto y) { return ruling_normal(p, x, y); }, u, v);
    }
    throw std::logic_error("unreachable");
}

ScalarJet2 scalar_analytic_jet2(const SolutionParams& p, double x, double y) {
    return scalar_jet2_of([&p](auto u, auto v) { return scalar_solution(p, u, v); }, x, y);
}

namespace {

void require_b(const SolutionParams& p, const char* what) {
    if (p.b == 0.0)
        throw std::domain_error(std::string(what) +
                                ": b = 0 is outside this chart; use the envelope path");
}

}  // namespace

Vec4 hypersurface_X_explicit(const SolutionParams& p, double x, double y, double w) {
    require_b(p, "hypersurface_X_explicit");
    const double ch = std::cosh(x);
    const double trig = p.c1 * std::cos(y) + p.c2 * std::sin(y) + p.c3 * std::sinh(x);
    const double bracket = p.a * p.c0 + p.b * w - (p.b * p.b / (p.a * ch)) * trig;
    return {std::cos(y) / ch * bracket + p.c1 / p.a,
            std::sin(y) / ch * bracket + p.c2 / p.a,
            std::sinh(x) / ch * bracket + p.c3 / p.a,
            -(p.a / p.b) * bracket + p.c0 / p.b};
}

double compact_profile(const SolutionParams& p, double x, double y, double w) {
    require_b(p, "compact_profile");
    const double trig = p.c1 * std::cos(y) + p.c2 * std::sin(y) + p.c3 * std::sinh(x);
    return (p.a / p.b) * p.c0 + w - (p.b / (p.a * std::cosh(x))) * trig;
}

Vec4 compact_center(const SolutionParams& p) {
    require_b(p, "compact_center");
    return {p.c1 / p.a, p.c2 / p.a, p.c3 / p.a, p.c0 / p.b};
}

Vec4 hypersurface_X_compact(const SolutionParams& p, double x, double y, double w) {
    const double f = compact_profile(p, x, y, w);
    const Vec4 n = ruling_normal<double>(p, x, y);
    return f * n + compact_center(p);
}

}  // namespace fsh4
