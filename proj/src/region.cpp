#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "thermogeom/errors.hpp"
#include "thermogeom/geodesics.hpp"

namespace thermogeom::geodesics {

namespace {

bool is_origin(const Vec2& x) { return x[0] == 0.0 && x[1] == 0.0; }

void require_not_origin(const Vec2& x)
{
    if (is_origin(x)) throw ThirdLawError("the minimum-entropy state (0, 0) is excluded from the equilibrium space");
}

void require_heat_capacity(double cV)
{
    if (!(cV > 0.0) || !std::isfinite(cV)) throw std::invalid_argument("cV must be positive");
}

double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

} // namespace

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Allowed: return "allowed";
    case Verdict::Adiabatic: return "adiabatic";
    case Verdict::Forbidden: return "forbidden";
    }
    return "unknown";
}

ProcessClassification classify(const Vec2& initial, const Vec2& final_state, double cV, double NkB)
{
    require_heat_capacity(cV);
    require_not_origin(initial);
    require_not_origin(final_state);
    const double dxi = final_state[0] - initial[0];
    const double deta = final_state[1] - initial[1];
    const double change = cV * dxi + deta;
    const double tol = 1e-12 * (std::abs(cV * dxi) + std::abs(deta) + 1.0);
    Verdict verdict = Verdict::Allowed;
    if (std::abs(change) <= tol) {
        verdict = Verdict::Adiabatic;
    } else if (change < 0.0) {
        verdict = Verdict::Forbidden;
    }
    return {dxi, deta, NkB * change, verdict};
}

double AdiabatLine::evaluate(const Vec2& x) const { return x[0] / xi_intercept + x[1] / eta_intercept; }

AdiabatLine adiabat_line(const Vec2& initial, double cV)
{
    require_heat_capacity(cV);
    require_not_origin(initial);
    const double a = initial[0] + initial[1] / cV;
    const double b = initial[1] + initial[0] * cV;
    if (a == 0.0 || b == 0.0) throw DomainError("the adiabat through this state passes through the origin");
    return {a, b};
}

RegionGeometry region_geometry(const Vec2& initial, double cV)
{
    const AdiabatLine line = adiabat_line(initial, cV);
    RegionGeometry r;
    r.initial = initial;
    r.tan_alpha = line.xi_intercept / line.eta_intercept;
    r.tan_alpha_prime = line.eta_intercept / line.xi_intercept;
    r.xi_axis_point = Vec2{line.xi_intercept, 0.0};
    r.eta_axis_point = Vec2{0.0, line.eta_intercept};
    const double s = cV * initial[0] + initial[1];
    r.area_nc = s * s / (2.0 * cV);
    return r;
}

double RegionGeometry::alpha_deg() const { return degrees(std::atan(tan_alpha)); }

double RegionGeometry::alpha_prime_deg() const { return degrees(std::atan(tan_alpha_prime)); }

MonteCarloArea monte_carlo_nc_area(const Vec2& initial, double cV, std::uint64_t samples, std::uint64_t seed)
{
    if (samples == 0) throw std::invalid_argument("Monte Carlo area needs at least one sample");
    const AdiabatLine line = adiabat_line(initial, cV);
    if (line.xi_intercept < 0.0 || line.eta_intercept < 0.0) {
        throw DomainError("the forbidden region of this state does not meet the positive quadrant");
    }
    // Box strictly larger than the triangle so that rejection is exercised on both sides.
    const double width = 1.25 * line.xi_intercept;
    const double height = 1.25 * line.eta_intercept;
    const double entropy_initial = cV * initial[0] + initial[1];

    std::mt19937_64 rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double xi = width * unit_uniform(rng);
        const double eta = height * unit_uniform(rng);
        if (cV * xi + eta < entropy_initial) ++hits;
    }
    const double box = width * height;
    return {box * static_cast<double>(hits) / static_cast<double>(samples), box, samples, hits};
}

std::string_view process_kind_name(ProcessKind kind)
{
    switch (kind) {
    case ProcessKind::Adiabatic: return "adiabatic";
    case ProcessKind::Isobaric: return "isobaric";
    case ProcessKind::Isothermal: return "isothermal";
    case ProcessKind::Isochoric: return "isochoric";
    case ProcessKind::Polytropic: return "polytropic";
    }
    return "unknown";
}

ProcessDescriptor process_identify(const Vec2& taus, double cV)
{
    require_heat_capacity(cV);
    const double tu = taus[0];
    const double tv = taus[1];
    if (tu == 0.0 || tv == 0.0 || std::isnan(tu) || std::isnan(tv)) {
        throw std::invalid_argument("relaxation times must be nonzero");
    }
    ProcessDescriptor d{};
    if (std::isinf(tu) && std::isinf(tv)) throw std::invalid_argument("a constant state is not a process");
    if (std::isinf(tu)) {
        // Constant U is constant T: n = 1 - tau_V / inf = 1.
        d.kind = ProcessKind::Isothermal;
        d.tau_ratio = std::copysign(kConstantCoordinate, tu * tv);
        d.polytropic_index = 1.0;
        d.pressure_exponent = 1.0;
        d.volume_exponent = 1.0;
        return d;
    }
    if (std::isinf(tv)) {
        d.kind = ProcessKind::Isochoric;
        d.tau_ratio = 0.0;
        d.polytropic_index = kConstantCoordinate;
        d.pressure_exponent = 0.0;
        d.volume_exponent = 1.0;
        return d;
    }
    d.tau_ratio = tu / tv;
    d.polytropic_index = 1.0 - tv / tu;
    d.pressure_exponent = tu;
    d.volume_exponent = tu - tv;
    if (std::abs(d.tau_ratio + cV) <= 1e-12 * (cV + std::abs(d.tau_ratio))) {
        d.kind = ProcessKind::Adiabatic;
    } else if (d.polytropic_index == 0.0) {
        d.kind = ProcessKind::Isobaric;
    } else {
        d.kind = ProcessKind::Polytropic;
    }
    return d;
}

double pv_log_invariant(const ProcessDescriptor& d, double P, double V, double cV)
{
    if (!(P > 0.0) || !(V > 0.0)) throw DomainError("pressure and volume must be positive");
    return d.pressure_exponent * std::log(cV * P) + d.volume_exponent * std::log(V);
}

} // namespace thermogeom::geodesics
