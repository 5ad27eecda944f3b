#pragma once

// Two-dimensional Riemannian (or pseudo-Riemannian) tensor calculus:
// metric fields, Levi-Civita connection, curvature and the geodesic
// right-hand side. Everything is evaluated pointwise; nothing is cached.

#include <array>
#include <functional>

#include "thermogeom/chart.hpp"

namespace thermogeom::manifold {

enum class DerivativeSource { Analytic, FiniteDifference };

/// Central-difference step for a coordinate of magnitude |x|:
/// h = max(cbrt(eps) * |x|, cbrt(eps)).
double difference_step(double x);

/// Floor on |det g| below which a metric is treated as singular.
inline constexpr double kDetFloor = 1e-12;

/// Symmetric 2x2 metric components over a chart.
class MetricField {
public:
    using Components = std::function<Mat2(const Vec2&)>;
    /// Returns {dg/dx^1, dg/dx^2}.
    using Partials = std::function<std::array<Mat2, 2>(const Vec2&)>;
    using Domain = std::function<bool(const Vec2&)>;

    /// `domain` narrows the chart domain; it may be empty. Without
    /// `partials` the field differentiates itself numerically.
    MetricField(Chart chart, Components components, Domain domain = {}, Partials partials = {});

    Chart chart() const noexcept { return chart_; }
    DerivativeSource derivative_source() const noexcept
    {
        return partials_ ? DerivativeSource::Analytic : DerivativeSource::FiniteDifference;
    }

    bool contains(const Vec2& x) const;

    /// Components at x, exactly symmetric. Throws DomainError outside the domain.
    Mat2 at(const Vec2& x) const;
    Mat2 at(const ChartPoint& p) const;

    /// Inverse metric; throws SingularMetricError when |det g| <= kDetFloor.
    Mat2 inverse_at(const Vec2& x) const;

    /// First partials dg/dx^c from the configured derivative source.
    std::array<Mat2, 2> partials(const Vec2& x) const;

    /// Same components and domain, numerically differentiated.
    MetricField with_finite_differences() const;

private:
    Chart chart_;
    Components components_;
    Domain domain_;
    Partials partials_;
};

/// Gamma^a_bc, stored as gamma[a](b, c).
struct ChristoffelSymbols {
    std::array<Mat2, 2> gamma{Mat2::Zero(), Mat2::Zero()};

    double operator()(int a, int b, int c) const { return gamma[a](b, c); }
};

struct CurvatureTensor {
    /// R^a_bcd at index ((a*2 + b)*2 + c)*2 + d.
    std::array<double, 16> riemann{};
    Mat2 ricci = Mat2::Zero();
    double scalar = 0.0;

    double operator()(int a, int b, int c, int d) const { return riemann[((a * 2 + b) * 2 + c) * 2 + d]; }
    double max_abs_riemann() const;
};

ChristoffelSymbols christoffel(const MetricField& metric, const Vec2& x);
ChristoffelSymbols christoffel(const MetricField& metric, const ChartPoint& p);

/// Riemann, Ricci (R_ab = g^cd R_acbd) and scalar curvature. The partials
/// of the connection come from central differences of christoffel().
CurvatureTensor curvature(const MetricField& metric, const Vec2& x);
CurvatureTensor curvature(const MetricField& metric, const ChartPoint& p);

double scalar_curvature(const MetricField& metric, const Vec2& x);
double scalar_curvature(const MetricField& metric, const ChartPoint& p);

/// Fully lowered R_abcd = g_ae R^e_bcd.
double lowered_riemann(const MetricField& metric, const CurvatureTensor& r, const Vec2& x, int a, int b, int c,
                       int d);

/// Acceleration -Gamma^a_bc v^b v^c.
Vec2 geodesic_rhs(const MetricField& metric, const Vec2& x, const Vec2& v);
Vec2 geodesic_rhs(const MetricField& metric, const ChartPoint& p, const Vec2& v);

/// g_ab v^a v^b.
double squared_norm(const MetricField& metric, const Vec2& x, const Vec2& v);

// Reference metrics.
MetricField euclidean_metric();
/// d(xi)^2 + d(eta)^2 on the log chart.
MetricField log_chart_metric();
/// d(theta)^2 + sin^2(theta) d(phi)^2.
MetricField unit_sphere_metric();

} // namespace thermogeom::manifold
