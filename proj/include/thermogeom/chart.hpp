#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace thermogeom {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Coordinate charts on two-dimensional equilibrium spaces, plus two
/// geometric reference charts used for validation.
enum class Chart {
    UVEntropy,   ///< (U, V), entropy representation, U > 0, V > 0
    XiEtaLog,    ///< (xi, eta) = (ln U/U0, ln V/V0), all of R^2
    SVEnergy,    ///< (S, V), energy representation, V > 0
    BetaV,       ///< (beta, V), first Massieu function
    UTheta,      ///< (U, theta), second Massieu function
    BetaTheta,   ///< (beta, theta), third Massieu function
    Plane,       ///< Euclidean reference chart
    Sphere,      ///< (theta, phi) on the unit sphere, 0 < theta < pi
};

std::string_view chart_name(Chart chart);
std::optional<Chart> parse_chart(std::string_view name);

/// Static domain predicate of a chart.
bool chart_contains(Chart chart, const Vec2& coords);

/// True for the charts whose two coordinates are both strictly positive
/// and whose ideal-gas geodesics are exponential in the affine parameter.
bool is_exponential_chart(Chart chart);

/// A point on a chart. Construction validates the chart domain.
class ChartPoint {
public:
    ChartPoint(Chart chart, double x1, double x2);
    ChartPoint(Chart chart, const Vec2& coords);

    Chart chart() const noexcept { return chart_; }
    const Vec2& coords() const noexcept { return coords_; }
    double operator[](int i) const { return coords_[i]; }

private:
    Chart chart_;
    Vec2 coords_;
};

} // namespace thermogeom
