#include <doctest.h>

#include <cmath>
#include <random>

#include "thermogeom/errors.hpp"
#include "thermogeom/manifold.hpp"

using namespace thermogeom;
using namespace thermogeom::manifold;

namespace {

// dU^2/U^2 + dV^2/V^2 written out by hand.
MetricField log_diagonal_metric()
{
    return MetricField(
        Chart::UVEntropy,
        [](const Vec2& x) -> Mat2 {
            Mat2 g = Mat2::Zero();
            g(0, 0) = 1.0 / (x[0] * x[0]);
            g(1, 1) = 1.0 / (x[1] * x[1]);
            return g;
        },
        {},
        [](const Vec2& x) {
            std::array<Mat2, 2> d{Mat2::Zero(), Mat2::Zero()};
            d[0](0, 0) = -2.0 / (x[0] * x[0] * x[0]);
            d[1](1, 1) = -2.0 / (x[1] * x[1] * x[1]);
            return d;
        });
}

// A curved, non-diagonal metric used to exercise the generic formulas.
MetricField skewed_metric()
{
    return MetricField(
        Chart::UVEntropy,
        [](const Vec2& x) -> Mat2 {
            Mat2 g;
            g << 2.0 + x[0] * x[1], 0.3 * x[0], 0.3 * x[0], 1.0 + x[1] * x[1];
            return g;
        },
        {},
        [](const Vec2& x) {
            std::array<Mat2, 2> d;
            d[0] << x[1], 0.3, 0.3, 0.0;
            d[1] << x[0], 0.0, 0.0, 2.0 * x[1];
            return d;
        });
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

} // namespace

TEST_CASE("christoffel symbols of the logarithmic diagonal metric")
{
    const auto g = log_diagonal_metric();
    const auto gam = christoffel(g, ChartPoint(Chart::UVEntropy, 2.0, 5.0));
    CHECK(gam(0, 0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(gam(1, 1, 1) == doctest::Approx(-0.2).epsilon(1e-15));
    CHECK(gam(0, 0, 1) == 0.0);
    CHECK(gam(0, 1, 1) == 0.0);
    CHECK(gam(1, 0, 0) == 0.0);
    CHECK(gam(1, 0, 1) == 0.0);
}

TEST_CASE("constant metrics have a vanishing connection")
{
    for (const auto& g : {euclidean_metric(), log_chart_metric()}) {
        const auto gam = christoffel(g, Vec2{0.7, -3.0});
        for (int a = 0; a < 2; ++a) CHECK(gam.gamma[a].cwiseAbs().maxCoeff() == 0.0);
        const auto r = curvature(g, Vec2{0.7, -3.0});
        CHECK(r.max_abs_riemann() == 0.0);
        CHECK(r.scalar == 0.0);
    }
}

TEST_CASE("connection is symmetric in its lower indices")
{
    const auto g = skewed_metric();
    for (auto m : {g, g.with_finite_differences()}) {
        const auto gam = christoffel(m, Vec2{1.3, 0.4});
        for (int a = 0; a < 2; ++a) CHECK(gam(a, 0, 1) == gam(a, 1, 0));
    }
}

TEST_CASE("finite differences agree with analytic partials")
{
    const auto analytic = log_diagonal_metric();
    const auto numeric = analytic.with_finite_differences();
    CHECK(numeric.derivative_source() == DerivativeSource::FiniteDifference);
    CHECK(analytic.derivative_source() == DerivativeSource::Analytic);

    // 10 x 10 log-spaced grid over [0.1, 10]^2.
    double worst_gamma = 0.0;
    double worst_riemann = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const Vec2 x{std::pow(10.0, -1.0 + 2.0 * i / 9.0), std::pow(10.0, -1.0 + 2.0 * j / 9.0)};
            const auto ga = christoffel(analytic, x);
            const auto gn = christoffel(numeric, x);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c) worst_gamma = std::max(worst_gamma, relative_gap(ga(a, b, c), gn(a, b, c)));
            const auto ra = curvature(analytic, x);
            const auto rn = curvature(numeric, x);
            for (std::size_t k = 0; k < 16; ++k)
                worst_riemann = std::max(worst_riemann, relative_gap(ra.riemann[k], rn.riemann[k]));
        }
    }
    CHECK(worst_gamma < 1e-6);
    CHECK(worst_riemann < 1e-6);

    const auto skew = skewed_metric();
    const auto ga = christoffel(skew, Vec2{1.3, 0.4});
    const auto gn = christoffel(skew.with_finite_differences(), Vec2{1.3, 0.4});
    for (int a = 0; a < 2; ++a) CHECK((ga.gamma[a] - gn.gamma[a]).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("unit sphere has scalar curvature 2")
{
    const auto g = unit_sphere_metric();
    const auto r = curvature(g, ChartPoint(Chart::Sphere, 1.0, 0.0));
    // Hand oracle: R^theta_phi,theta,phi = sin^2(theta), R_ab = g_ab, R = 2.
    const double s2 = std::sin(1.0) * std::sin(1.0);
    CHECK(r(0, 1, 0, 1) == doctest::Approx(s2).epsilon(1e-8));
    CHECK(r(1, 0, 0, 1) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(r.ricci(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.ricci(1, 1) == doctest::Approx(s2).epsilon(1e-8));
    CHECK(std::abs(r.ricci(0, 1)) < 1e-10);
    CHECK(r.scalar == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(lowered_riemann(g, r, Vec2{1.0, 0.0}, 0, 1, 0, 1) == doctest::Approx(s2).epsilon(1e-8));

    // Nested differences of cot(theta) lose accuracy towards the poles.
    for (double theta : {0.2, 0.9, 1.5707963, 2.4, 3.0}) {
        CHECK(scalar_curvature(g, Vec2{theta, 0.3}) == doctest::Approx(2.0).epsilon(1e-6));
    }
}

TEST_CASE("Ricci contraction matches R^c_acb")
{
    for (const auto& [g, x] : {std::pair{unit_sphere_metric(), Vec2{0.8, 0.1}}, std::pair{skewed_metric(), Vec2{1.3, 0.4}}}) {
        const auto r = curvature(g, x);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                double s = 0.0;
                for (int c = 0; c < 2; ++c) s += r(c, a, c, b);
                CHECK(r.ricci(a, b) == doctest::Approx(s).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("Riemann tensor is antisymmetric in its last pair")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec2 x{u(rng), u(rng)};
        const auto r = curvature(skewed_metric(), x);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int d = 0; d < 2; ++d) CHECK(std::abs(r(a, b, c, d) + r(a, b, d, c)) <= 1e-10);
    }
}

TEST_CASE("logarithmic diagonal metric is flat")
{
    const auto g = log_diagonal_metric();
    const auto r = curvature(g, ChartPoint(Chart::UVEntropy, 1.7, 3.3));
    CHECK(r.max_abs_riemann() < 1e-8);
    CHECK(std::abs(scalar_curvature(g, Vec2{0.3, 8.0})) < 1e-8);
}

TEST_CASE("geodesic right-hand side")
{
    CHECK(geodesic_rhs(log_chart_metric(), Vec2{4.0, -1.0}, Vec2{1.0, 2.0}).cwiseAbs().maxCoeff() == 0.0);

    const auto g = log_diagonal_metric();
    const Vec2 a1 = geodesic_rhs(g, ChartPoint(Chart::UVEntropy, 2.0, 1.0), Vec2{4.0, 0.0});
    CHECK(a1[0] == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(a1[1] == 0.0);
    const Vec2 a2 = geodesic_rhs(g, ChartPoint(Chart::UVEntropy, 1.0, 3.0), Vec2{0.0, 3.0});
    CHECK(a2[0] == 0.0);
    CHECK(a2[1] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("domain and singularity errors")
{
    CHECK_THROWS_AS(ChartPoint(Chart::UVEntropy, -1.0, 2.0), DomainError);
    CHECK_THROWS_AS(ChartPoint(Chart::Sphere, 4.0, 0.0), DomainError);
    CHECK_NOTHROW(ChartPoint(Chart::XiEtaLog, -1.0, -2.0));

    const auto g = log_diagonal_metric();
    CHECK_THROWS_AS(g.at(Vec2{0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(christoffel(g, Vec2{1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(christoffel(g, ChartPoint(Chart::XiEtaLog, 1.0, 1.0)), DomainError);

    const MetricField degenerate(Chart::Plane, [](const Vec2& x) -> Mat2 {
        Mat2 m;
        m << x[0], 0.0, 0.0, 1.0;
        return m;
    });
    CHECK_THROWS_AS(christoffel(degenerate, Vec2{0.0, 1.0}), SingularMetricError);
    CHECK_NOTHROW(christoffel(degenerate, Vec2{0.5, 1.0}));

    // A domain with no room for a stencil in the first coordinate.
    const MetricField pinned(
        Chart::Plane, [](const Vec2&) -> Mat2 { return Mat2::Identity(); },
        [](const Vec2& x) { return x[0] == 1.0; });
    CHECK_THROWS_AS(christoffel(pinned, Vec2{1.0, 0.0}), DomainError);
}

TEST_CASE("stencils shrink near the domain boundary")
{
    const auto numeric = log_diagonal_metric().with_finite_differences();
    const Vec2 x{1e-7, 1.0};
    const auto gam = christoffel(numeric, x);
    CHECK(gam(0, 0, 0) == doctest::Approx(-1e7).epsilon(1e-6));
}

TEST_CASE("returned metric is exactly symmetric")
{
    const MetricField lopsided(Chart::Plane, [](const Vec2& x) -> Mat2 {
        Mat2 m;
        m << 2.0, 0.1 + x[0], 0.1 + x[0] + 1e-9, 3.0;
        return m;
    });
    const Mat2 g = lopsided.at(Vec2{0.4, 0.0});
    CHECK(g(0, 1) == g(1, 0));
}
