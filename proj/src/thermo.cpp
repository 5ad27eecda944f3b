#include "thermogeom/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "thermogeom/errors.hpp"

namespace thermogeom::thermo {

namespace {

bool positive_quadrant(const Vec2& x) { return x[0] > 0.0 && x[1] > 0.0 && std::isfinite(x[0]) && std::isfinite(x[1]); }

// Jet of c + a ln(x1) + b ln(x2) with the constant folded into `value`.
Jet log_jet(double value, double a, double b, const Vec2& x)
{
    Jet j;
    j.value = value;
    j.d1 = Vec2{a / x[0], b / x[1]};
    j.d2(0, 0) = -a / (x[0] * x[0]);
    j.d2(1, 1) = -b / (x[1] * x[1]);
    j.d3[0](0, 0) = 2.0 * a / (x[0] * x[0] * x[0]);
    j.d3[1](1, 1) = 2.0 * b / (x[1] * x[1] * x[1]);
    return j;
}

} // namespace

void GasParameters::validate() const
{
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(NkB)) throw std::invalid_argument("NkB must be positive");
    if (!positive(cV)) throw std::invalid_argument("cV must be positive");
    if (!positive(U0)) throw std::invalid_argument("U0 must be positive");
    if (!positive(V0)) throw std::invalid_argument("V0 must be positive");
    for (double s : {S0, S01, S02, S03}) {
        if (!std::isfinite(s)) throw std::invalid_argument("entropy reference constants must be finite");
    }
}

GasParameters GasParameters::with_consistent_massieu_constants() const
{
    GasParameters p = *this;
    const double cn = cV * NkB;
    p.S01 = S0 + cn * std::log(cn / U0) - NkB * std::log(V0) - cn;
    p.S02 = S0 - cn * std::log(U0) + NkB * std::log(NkB / V0) - NkB;
    p.S03 = S0 + cn * std::log(cn / U0) + NkB * std::log(NkB / V0) - cn - NkB;
    return p;
}

std::string_view representation_name(Representation rep)
{
    switch (rep) {
    case Representation::Entropy: return "entropy";
    case Representation::Energy: return "energy";
    case Representation::Massieu1: return "massieu1";
    case Representation::Massieu2: return "massieu2";
    case Representation::Massieu3: return "massieu3";
    }
    return "unknown";
}

std::optional<Representation> parse_representation(std::string_view name)
{
    for (auto rep : {Representation::Entropy, Representation::Energy, Representation::Massieu1,
                     Representation::Massieu2, Representation::Massieu3}) {
        if (representation_name(rep) == name) return rep;
    }
    return std::nullopt;
}

Chart chart_of(Representation rep)
{
    switch (rep) {
    case Representation::Entropy: return Chart::UVEntropy;
    case Representation::Energy: return Chart::SVEnergy;
    case Representation::Massieu1: return Chart::BetaV;
    case Representation::Massieu2: return Chart::UTheta;
    case Representation::Massieu3: return Chart::BetaTheta;
    }
    return Chart::UVEntropy;
}

FundamentalEquation::FundamentalEquation(Representation rep, Evaluator evaluator, Domain domain, GasParameters params,
                                         bool third_order)
    : rep_(rep), evaluator_(std::move(evaluator)), domain_(std::move(domain)), params_(params),
      third_order_(third_order)
{
}

bool FundamentalEquation::contains(const Vec2& x) const
{
    return chart_contains(chart(), x) && (!domain_ || domain_(x));
}

Jet FundamentalEquation::jet(const Vec2& x) const
{
    if (!contains(x)) {
        throw DomainError("fundamental equation '" + std::string(representation_name(rep_)) +
                          "' evaluated outside its domain");
    }
    return evaluator_(x);
}

FundamentalEquation ideal_gas_entropy(const GasParameters& params)
{
    params.validate();
    const GasParameters p = params;
    return FundamentalEquation(
        Representation::Entropy,
        [p](const Vec2& x) {
            const double value = p.S0 + p.NkB * p.cV * std::log(x[0] / p.U0) + p.NkB * std::log(x[1] / p.V0);
            return log_jet(value, p.NkB * p.cV, p.NkB, x);
        },
        positive_quadrant, p);
}

FundamentalEquation ideal_gas_energy(const GasParameters& params)
{
    params.validate();
    const GasParameters p = params;
    // U = U0 exp(a (S - S0)) (V/V0)^b
    const double a = 1.0 / (p.NkB * p.cV);
    const double b = -1.0 / p.cV;
    return FundamentalEquation(
        Representation::Energy,
        [p, a, b](const Vec2& x) {
            const double S = x[0];
            const double V = x[1];
            const double U = p.U0 * std::exp(a * (S - p.S0)) * std::pow(V / p.V0, b);
            Jet j;
            j.value = U;
            j.d1 = Vec2{a * U, b * U / V};
            j.d2(0, 0) = a * a * U;
            j.d2(0, 1) = j.d2(1, 0) = a * b * U / V;
            j.d2(1, 1) = b * (b - 1.0) * U / (V * V);
            // d3[c](a', b') = d/dx^c of d2(a', b')
            j.d3[0] = a * j.d2;
            j.d3[1](0, 0) = a * a * b * U / V;
            j.d3[1](0, 1) = j.d3[1](1, 0) = a * b * (b - 1.0) * U / (V * V);
            j.d3[1](1, 1) = b * (b - 1.0) * (b - 2.0) * U / (V * V * V);
            return j;
        },
        [](const Vec2& x) { return std::isfinite(x[0]) && x[1] > 0.0; }, p);
}

FundamentalEquation massieu_function(const GasParameters& params, int which)
{
    params.validate();
    const GasParameters p = params;
    const double cn = p.cV * p.NkB;
    const double n = p.NkB;
    switch (which) {
    case 1:
        // S1(beta, V) = S01 - cV NkB ln(beta) + NkB ln(V)
        return FundamentalEquation(
            Representation::Massieu1,
            [p, cn, n](const Vec2& x) {
                return log_jet(p.S01 - cn * std::log(x[0]) + n * std::log(x[1]), -cn, n, x);
            },
            positive_quadrant, p);
    case 2:
        // S2(U, theta) = S02 + cV NkB ln(U) - NkB ln(theta)
        return FundamentalEquation(
            Representation::Massieu2,
            [p, cn, n](const Vec2& x) {
                return log_jet(p.S02 + cn * std::log(x[0]) - n * std::log(x[1]), cn, -n, x);
            },
            positive_quadrant, p);
    case 3:
        // S3(beta, theta) = S03 - cV NkB ln(beta) - NkB ln(theta)
        return FundamentalEquation(
            Representation::Massieu3,
            [p, cn, n](const Vec2& x) {
                return log_jet(p.S03 - cn * std::log(x[0]) - n * std::log(x[1]), -cn, -n, x);
            },
            positive_quadrant, p);
    default:
        throw std::invalid_argument("Massieu function index must be 1, 2 or 3");
    }
}

std::array<FundamentalEquation, 3> massieu_functions(const GasParameters& params)
{
    return {massieu_function(params, 1), massieu_function(params, 2), massieu_function(params, 3)};
}

StatePoint state_equations(const FundamentalEquation& fe, const Vec2& x)
{
    const Vec2 d1 = fe.gradient(x);
    if (fe.representation() == Representation::Energy) return {fe.representation(), x, Vec2{d1[0], -d1[1]}};
    return {fe.representation(), x, d1};
}

double inverse_temperature(const GasParameters& params, double U) { return params.NkB * params.cV / U; }

double pressure_over_temperature(const GasParameters& params, double V) { return params.NkB / V; }

SecondLawReport check_second_law(const FundamentalEquation& fe, std::span<const Vec2> samples)
{
    SecondLawReport report;
    report.entries.reserve(samples.size());
    for (const Vec2& x : samples) {
        const Mat2 h = fe.hessian(x);
        const Eigen::SelfAdjointEigenSolver<Mat2> eig(h, Eigen::EigenvaluesOnly);
        const Vec2 ev = eig.eigenvalues();
        const double tol = 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff());
        bool pass = false;
        switch (fe.representation()) {
        case Representation::Entropy:
            pass = ev[1] <= tol;
            break;
        case Representation::Energy:
            pass = ev[0] >= -tol;
            break;
        case Representation::Massieu1:  // convex in beta, concave in V
            pass = h(0, 0) >= -tol && h(1, 1) <= tol;
            break;
        case Representation::Massieu2:  // concave in U, convex in theta
            pass = h(0, 0) <= tol && h(1, 1) >= -tol;
            break;
        case Representation::Massieu3:
            pass = h(0, 0) >= -tol && h(1, 1) >= -tol;
            break;
        }
        if (!pass) ++report.failures;
        report.entries.push_back({x, ev, pass});
    }
    return report;
}

ThirdLaw check_third_law_point(const GasParameters&, const Vec2& log_coords)
{
    return (log_coords[0] == 0.0 && log_coords[1] == 0.0) ? ThirdLaw::Excluded : ThirdLaw::Allowed;
}

Vec2 log_from_uv(const GasParameters& params, const Vec2& uv)
{
    if (!positive_quadrant(uv)) throw DomainError("log chart needs U > 0 and V > 0");
    return Vec2{std::log(uv[0] / params.U0), std::log(uv[1] / params.V0)};
}

Vec2 uv_from_log(const GasParameters& params, const Vec2& log_coords)
{
    return Vec2{params.U0 * std::exp(log_coords[0]), params.V0 * std::exp(log_coords[1])};
}

Vec2 uv_from_chart(const GasParameters& params, Chart chart, const Vec2& x)
{
    const double cn = params.cV * params.NkB;
    switch (chart) {
    case Chart::UVEntropy: return x;
    case Chart::XiEtaLog: return uv_from_log(params, x);
    case Chart::BetaV: return Vec2{cn / x[0], x[1]};
    case Chart::UTheta: return Vec2{x[0], params.NkB / x[1]};
    case Chart::BetaTheta: return Vec2{cn / x[0], params.NkB / x[1]};
    case Chart::SVEnergy: return Vec2{ideal_gas_energy(params).value(x), x[1]};
    default: throw std::invalid_argument("chart " + std::string(chart_name(chart)) + " is not an ideal-gas chart");
    }
}

Vec2 chart_from_uv(const GasParameters& params, Chart chart, const Vec2& uv)
{
    const double cn = params.cV * params.NkB;
    switch (chart) {
    case Chart::UVEntropy: return uv;
    case Chart::XiEtaLog: return log_from_uv(params, uv);
    case Chart::BetaV: return Vec2{cn / uv[0], uv[1]};
    case Chart::UTheta: return Vec2{uv[0], params.NkB / uv[1]};
    case Chart::BetaTheta: return Vec2{cn / uv[0], params.NkB / uv[1]};
    case Chart::SVEnergy: return Vec2{ideal_gas_entropy(params).value(uv), uv[1]};
    default: throw std::invalid_argument("chart " + std::string(chart_name(chart)) + " is not an ideal-gas chart");
    }
}

double entropy_from_log(const GasParameters& params, const Vec2& log_coords)
{
    return params.S0 + params.NkB * (params.cV * log_coords[0] + log_coords[1]);
}

} // namespace thermogeom::thermo
