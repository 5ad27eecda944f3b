#include "thermogeom/chart.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "thermogeom/errors.hpp"

namespace thermogeom {

namespace {

constexpr std::array<std::pair<Chart, std::string_view>, 8> kChartNames{{
    {Chart::UVEntropy, "UV-entropy"},
    {Chart::XiEtaLog, "xi-eta-log"},
    {Chart::SVEnergy, "SV-energy"},
    {Chart::BetaV, "beta-V"},
    {Chart::UTheta, "U-theta"},
    {Chart::BetaTheta, "beta-theta"},
    {Chart::Plane, "plane"},
    {Chart::Sphere, "sphere"},
}};

bool finite(const Vec2& x) { return std::isfinite(x[0]) && std::isfinite(x[1]); }

} // namespace

std::string_view chart_name(Chart chart)
{
    for (const auto& [c, name] : kChartNames) {
        if (c == chart) return name;
    }
    return "unknown";
}

std::optional<Chart> parse_chart(std::string_view name)
{
    for (const auto& [c, n] : kChartNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

bool chart_contains(Chart chart, const Vec2& x)
{
    if (!finite(x)) return false;
    switch (chart) {
    case Chart::UVEntropy:
    case Chart::BetaV:
    case Chart::UTheta:
    case Chart::BetaTheta:
        return x[0] > 0.0 && x[1] > 0.0;
    case Chart::SVEnergy:
        return x[1] > 0.0;
    case Chart::Sphere:
        return x[0] > 0.0 && x[0] < std::numbers::pi;
    case Chart::XiEtaLog:
    case Chart::Plane:
        return true;
    }
    return false;
}

bool is_exponential_chart(Chart chart)
{
    return chart == Chart::UVEntropy || chart == Chart::BetaV || chart == Chart::UTheta ||
           chart == Chart::BetaTheta;
}

ChartPoint::ChartPoint(Chart chart, double x1, double x2) : ChartPoint(chart, Vec2{x1, x2}) {}

ChartPoint::ChartPoint(Chart chart, const Vec2& coords) : chart_(chart), coords_(coords)
{
    if (!chart_contains(chart, coords)) {
        throw DomainError("point (" + std::to_string(coords[0]) + ", " + std::to_string(coords[1]) +
                          ") is outside chart " + std::string(chart_name(chart)));
    }
}

} // namespace thermogeom
