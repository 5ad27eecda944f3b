#include "thermogeom/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/LU>

#include "thermogeom/errors.hpp"

namespace thermogeom::manifold {

namespace {

constexpr int kMaxStepHalvings = 40;

std::string describe(const Vec2& x)
{
    return "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")";
}

// Largest admissible central-difference step along coordinate c. When the
// default stencil leaves the domain the step drops to the relative scale
// cbrt(eps) |x^c| and is then halved.
template <class Inside>
double stencil_step(const Vec2& x, int c, const Inside& inside)
{
    const double relative = std::cbrt(std::numeric_limits<double>::epsilon()) * std::abs(x[c]);
    double h = difference_step(x[c]);
    for (int attempt = 0; attempt <= kMaxStepHalvings; ++attempt) {
        Vec2 xp = x;
        Vec2 xm = x;
        xp[c] += h;
        xm[c] -= h;
        if (inside(xp) && inside(xm) && xp[c] != xm[c]) return h;
        h = (attempt == 0 && relative > 0.0 && relative < h) ? relative : 0.5 * h;
    }
    throw DomainError("difference stencil leaves the domain at " + describe(x));
}

} // namespace

double difference_step(double x)
{
    static const double root = std::cbrt(std::numeric_limits<double>::epsilon());
    return std::max(root * std::abs(x), root);
}

MetricField::MetricField(Chart chart, Components components, Domain domain, Partials partials)
    : chart_(chart), components_(std::move(components)), domain_(std::move(domain)), partials_(std::move(partials))
{
}

bool MetricField::contains(const Vec2& x) const
{
    return chart_contains(chart_, x) && (!domain_ || domain_(x));
}

Mat2 MetricField::at(const Vec2& x) const
{
    if (!contains(x)) throw DomainError("metric evaluated outside its domain at " + describe(x));
    Mat2 g = components_(x);
    const double off = 0.5 * (g(0, 1) + g(1, 0));
    g(0, 1) = off;
    g(1, 0) = off;
    return g;
}

Mat2 MetricField::at(const ChartPoint& p) const
{
    if (p.chart() != chart_) throw DomainError("chart mismatch between point and metric");
    return at(p.coords());
}

Mat2 MetricField::inverse_at(const Vec2& x) const
{
    const Mat2 g = at(x);
    const double det = g.determinant();
    if (!(std::abs(det) > kDetFloor)) {
        throw SingularMetricError("metric is singular at " + describe(x) + " (det = " + std::to_string(det) + ")");
    }
    Mat2 inv;
    inv << g(1, 1) / det, -g(0, 1) / det, -g(1, 0) / det, g(0, 0) / det;
    return inv;
}

std::array<Mat2, 2> MetricField::partials(const Vec2& x) const
{
    if (!contains(x)) throw DomainError("metric partials requested outside the domain at " + describe(x));
    if (partials_) {
        auto d = partials_(x);
        for (auto& m : d) {
            const double off = 0.5 * (m(0, 1) + m(1, 0));
            m(0, 1) = off;
            m(1, 0) = off;
        }
        return d;
    }
    std::array<Mat2, 2> d;
    const auto inside = [this](const Vec2& y) { return contains(y); };
    for (int c = 0; c < 2; ++c) {
        const double h = stencil_step(x, c, inside);
        Vec2 xp = x;
        Vec2 xm = x;
        xp[c] += h;
        xm[c] -= h;
        d[c] = (at(xp) - at(xm)) / (xp[c] - xm[c]);
    }
    return d;
}

MetricField MetricField::with_finite_differences() const
{
    return MetricField(chart_, components_, domain_, {});
}

double CurvatureTensor::max_abs_riemann() const
{
    double m = 0.0;
    for (double r : riemann) m = std::max(m, std::abs(r));
    return m;
}

ChristoffelSymbols christoffel(const MetricField& metric, const Vec2& x)
{
    const Mat2 ginv = metric.inverse_at(x);
    const auto dg = metric.partials(x);
    ChristoffelSymbols out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = b; c < 2; ++c) {
                double s = 0.0;
                for (int d = 0; d < 2; ++d) {
                    s += ginv(a, d) * (dg[c](d, b) + dg[b](c, d) - dg[d](b, c));
                }
                out.gamma[a](b, c) = 0.5 * s;
                out.gamma[a](c, b) = 0.5 * s;
            }
        }
    }
    return out;
}

ChristoffelSymbols christoffel(const MetricField& metric, const ChartPoint& p)
{
    if (p.chart() != metric.chart()) throw DomainError("chart mismatch between point and metric");
    return christoffel(metric, p.coords());
}

CurvatureTensor curvature(const MetricField& metric, const Vec2& x)
{
    const ChristoffelSymbols gam = christoffel(metric, x);

    // dgam[c].gamma[a](b, d) = d Gamma^a_bd / dx^c
    std::array<ChristoffelSymbols, 2> dgam;
    const auto inside = [&metric](const Vec2& y) { return metric.contains(y); };
    for (int c = 0; c < 2; ++c) {
        const double h = stencil_step(x, c, inside);
        Vec2 xp = x;
        Vec2 xm = x;
        xp[c] += h;
        xm[c] -= h;
        const ChristoffelSymbols gp = christoffel(metric, xp);
        const ChristoffelSymbols gm = christoffel(metric, xm);
        const double width = xp[c] - xm[c];
        for (int a = 0; a < 2; ++a) dgam[c].gamma[a] = (gp.gamma[a] - gm.gamma[a]) / width;
    }

    CurvatureTensor out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) {
                    double r = dgam[c](a, b, d) - dgam[d](a, b, c);
                    for (int e = 0; e < 2; ++e) r += gam(a, e, c) * gam(e, b, d) - gam(a, e, d) * gam(e, b, c);
                    out.riemann[((a * 2 + b) * 2 + c) * 2 + d] = r;
                }
            }
        }
    }

    const Mat2 g = metric.at(x);
    const Mat2 ginv = metric.inverse_at(x);
    auto lowered = [&](int a, int b, int c, int d) {
        double s = 0.0;
        for (int e = 0; e < 2; ++e) s += g(a, e) * out(e, b, c, d);
        return s;
    };
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double s = 0.0;
            for (int c = 0; c < 2; ++c) {
                for (int d = 0; d < 2; ++d) s += ginv(c, d) * lowered(a, c, b, d);
            }
            out.ricci(a, b) = s;
        }
    }
    const double off = 0.5 * (out.ricci(0, 1) + out.ricci(1, 0));
    out.ricci(0, 1) = off;
    out.ricci(1, 0) = off;
    out.scalar = (ginv.array() * out.ricci.array()).sum();
    return out;
}

CurvatureTensor curvature(const MetricField& metric, const ChartPoint& p)
{
    if (p.chart() != metric.chart()) throw DomainError("chart mismatch between point and metric");
    return curvature(metric, p.coords());
}

double scalar_curvature(const MetricField& metric, const Vec2& x) { return curvature(metric, x).scalar; }

double scalar_curvature(const MetricField& metric, const ChartPoint& p) { return curvature(metric, p).scalar; }

double lowered_riemann(const MetricField& metric, const CurvatureTensor& r, const Vec2& x, int a, int b, int c, int d)
{
    const Mat2 g = metric.at(x);
    return g(a, 0) * r(0, b, c, d) + g(a, 1) * r(1, b, c, d);
}

Vec2 geodesic_rhs(const MetricField& metric, const Vec2& x, const Vec2& v)
{
    const ChristoffelSymbols gam = christoffel(metric, x);
    Vec2 acc;
    for (int a = 0; a < 2; ++a) acc[a] = -v.dot(gam.gamma[a] * v);
    return acc;
}

Vec2 geodesic_rhs(const MetricField& metric, const ChartPoint& p, const Vec2& v)
{
    if (p.chart() != metric.chart()) throw DomainError("chart mismatch between point and metric");
    return geodesic_rhs(metric, p.coords(), v);
}

double squared_norm(const MetricField& metric, const Vec2& x, const Vec2& v) { return v.dot(metric.at(x) * v); }

MetricField euclidean_metric()
{
    return MetricField(
        Chart::Plane, [](const Vec2&) -> Mat2 { return Mat2::Identity(); }, {},
        [](const Vec2&) { return std::array<Mat2, 2>{Mat2::Zero(), Mat2::Zero()}; });
}

MetricField log_chart_metric()
{
    return MetricField(
        Chart::XiEtaLog, [](const Vec2&) -> Mat2 { return Mat2::Identity(); }, {},
        [](const Vec2&) { return std::array<Mat2, 2>{Mat2::Zero(), Mat2::Zero()}; });
}

MetricField unit_sphere_metric()
{
    return MetricField(
        Chart::Sphere,
        [](const Vec2& x) -> Mat2 {
            const double s = std::sin(x[0]);
            Mat2 g;
            g << 1.0, 0.0, 0.0, s * s;
            return g;
        },
        {},
        [](const Vec2& x) {
            Mat2 dth;
            dth << 0.0, 0.0, 0.0, 2.0 * std::sin(x[0]) * std::cos(x[0]);
            return std::array<Mat2, 2>{dth, Mat2::Zero()};
        });
}

} // namespace thermogeom::manifold
