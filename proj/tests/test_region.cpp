#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thermogeom/errors.hpp"
#include "thermogeom/geodesics.hpp"

using namespace thermogeom;
using namespace thermogeom::geodesics;

TEST_CASE("second-law classification")
{
    const Vec2 i{1.0, 1.0};
    const auto a = classify(i, i + Vec2{-1.0, 2.0}, 1.5);
    CHECK(a.verdict == Verdict::Allowed);
    CHECK(a.delta_S == doctest::Approx(0.5));
    const auto f = classify(i, i + Vec2{-2.0, 1.0}, 1.5);
    CHECK(f.verdict == Verdict::Forbidden);
    CHECK(f.delta_S == doctest::Approx(-2.0));
    const auto z = classify(i, i + Vec2{-2.0, 3.0}, 1.5);
    CHECK(z.verdict == Verdict::Adiabatic);
    CHECK(classify(i, i + Vec2{-2.0, 3.0}, 1.5, 2.0).delta_S == 0.0);
    CHECK(classify(i + Vec2{-2.0, 3.0}, i, 1.5).verdict == Verdict::Adiabatic);
    CHECK(classify(i, i + Vec2{1.0, 0.0}, 1.5, 2.0).delta_S == doctest::Approx(3.0));

    CHECK_THROWS_AS(classify(Vec2{0.0, 0.0}, i, 1.5), ThirdLawError);
    CHECK_THROWS_AS(classify(i, Vec2{0.0, 0.0}, 1.5), ThirdLawError);
    CHECK_NOTHROW(classify(Vec2{1e-9, 0.0}, i, 1.5));
    CHECK_THROWS_AS(classify(i, i, 0.0), std::invalid_argument);
    CHECK(verdict_name(Verdict::Forbidden) == "forbidden");
}

TEST_CASE("classification agrees with the entropy change on a grid")
{
    const double cV = 1.5;
    const Vec2 i{0.05, 0.05};
    for (int a = 0; a <= 100; ++a) {
        for (int b = 0; b <= 100; ++b) {
            const Vec2 d{-5.0 + 0.1 * a, -5.0 + 0.1 * b};
            const double s = cV * d[0] + d[1];
            const auto v = classify(i, i + d, cV).verdict;
            if (std::abs(s) < 1e-10) {
                CHECK(v == Verdict::Adiabatic);
            } else {
                CHECK(v == (s > 0.0 ? Verdict::Allowed : Verdict::Forbidden));
            }
        }
    }
}

TEST_CASE("adiabat through an initial state")
{
    const auto line = adiabat_line(Vec2{2.0, 3.0}, 1.5);
    CHECK(line.xi_intercept == 4.0);
    CHECK(line.eta_intercept == 6.0);
    CHECK(line.evaluate(Vec2{2.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 0; k <= 10; ++k) {
        const double t = k / 10.0;
        const Vec2 p{4.0 * t, 6.0 * (1.0 - t)};
        if (p == Vec2{0.0, 0.0}) continue;
        CHECK(line.evaluate(p) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(classify(Vec2{2.0, 3.0}, p, 1.5).verdict == Verdict::Adiabatic);
    }
    CHECK_THROWS_AS(adiabat_line(Vec2{0.0, 0.0}, 1.5), ThirdLawError);
    CHECK_THROWS_AS(adiabat_line(Vec2{1.0, -1.5}, 1.5), DomainError);
}

TEST_CASE("region geometry")
{
    const auto r = region_geometry(Vec2{2.0, 3.0}, 1.5);
    CHECK(r.tan_alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r.xi_axis_point == Vec2{4.0, 0.0});
    CHECK(r.eta_axis_point == Vec2{0.0, 6.0});
    CHECK(r.area_nc == 12.0);

    const auto axis = region_geometry(Vec2{0.0, 3.0}, 1.5);
    CHECK(axis.tan_alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(axis.alpha_deg() == doctest::Approx(std::atan(2.0 / 3.0) * 180.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(std::abs(axis.alpha_deg() - 33.3) < 0.5);
    CHECK(std::abs(axis.alpha_prime_deg() - 56.7) < 0.5);
    CHECK(axis.alpha_deg() + axis.alpha_prime_deg() == doctest::Approx(90.0).epsilon(1e-14));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int k = 0; k < 100; ++k) {
        const double cV = u(rng);
        const Vec2 x{u(rng), u(rng)};
        const auto g = region_geometry(x, cV);
        CHECK(std::abs(g.tan_alpha * g.tan_alpha_prime - 1.0) < 1e-12);
        CHECK(g.tan_alpha == doctest::Approx(1.0 / cV).epsilon(1e-12));
        const double s = cV * x[0] + x[1];
        CHECK(g.area_nc == doctest::Approx(0.5 * g.xi_axis_point[0] * g.eta_axis_point[1]).epsilon(1e-12));
        CHECK(g.area_nc == doctest::Approx(s * s / (2.0 * cV)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(region_geometry(Vec2{0.0, 0.0}, 1.5), ThirdLawError);
}

TEST_CASE("Monte Carlo area of the forbidden region")
{
    const auto mc = monte_carlo_nc_area(Vec2{2.0, 3.0}, 1.5, 1000000, 12345);
    CHECK(std::abs(mc.estimate - 12.0) / 12.0 < 0.01);
    CHECK(mc.box_area == doctest::Approx(37.5));
    CHECK(mc.samples == 1000000);
    const auto again = monte_carlo_nc_area(Vec2{2.0, 3.0}, 1.5, 1000000, 12345);
    CHECK(again.hits == mc.hits);
    CHECK(again.estimate == mc.estimate);
    const auto other = monte_carlo_nc_area(Vec2{2.0, 3.0}, 1.5, 1000000, 54321);
    CHECK(other.hits != mc.hits);
    CHECK(std::abs(other.estimate - 12.0) / 12.0 < 0.01);

    CHECK_THROWS_AS(monte_carlo_nc_area(Vec2{2.0, 3.0}, 1.5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_nc_area(Vec2{-2.0, -3.0}, 1.5, 10, 1), DomainError);
    CHECK_THROWS_AS(monte_carlo_nc_area(Vec2{0.0, 0.0}, 1.5, 10, 1), ThirdLawError);
}

TEST_CASE("process identification")
{
    const double cV = 1.5;
    const auto ad = process_identify(Vec2{-3.0, 2.0}, cV);
    CHECK(ad.kind == ProcessKind::Adiabatic);
    CHECK(std::abs(ad.polytropic_index - 5.0 / 3.0) < 1e-12);
    CHECK(ad.tau_ratio == -1.5);

    const auto bar = process_identify(Vec2{2.0, 2.0}, cV);
    CHECK(bar.kind == ProcessKind::Isobaric);
    CHECK(bar.polytropic_index == 0.0);

    const auto poly = process_identify(Vec2{2.0, 1.0}, cV);
    CHECK(poly.kind == ProcessKind::Polytropic);
    CHECK(poly.polytropic_index == 0.5);

    const auto chor = process_identify(Vec2{2.0, kConstantCoordinate}, cV);
    CHECK(chor.kind == ProcessKind::Isochoric);
    CHECK(std::isinf(chor.polytropic_index));

    const auto therm = process_identify(Vec2{kConstantCoordinate, 3.0}, cV);
    CHECK(therm.kind == ProcessKind::Isothermal);
    CHECK(therm.polytropic_index == 1.0);

    CHECK_THROWS_AS(process_identify(Vec2{0.0, 1.0}, cV), std::invalid_argument);
    CHECK_THROWS_AS(process_identify(Vec2{1.0, 0.0}, cV), std::invalid_argument);
    CHECK(process_kind_name(ProcessKind::Isochoric) == "isochoric");

    // cV = l / 2 for l degrees of freedom gives n = (l + 2) / l.
    for (int l : {3, 5, 6}) {
        const double c = l / 2.0;
        CHECK(process_identify(Vec2{-c, 1.0}, c).polytropic_index == doctest::Approx((l + 2.0) / l).epsilon(1e-14));
    }
}

TEST_CASE("pressure-volume invariants along the closed-form geodesics")
{
    // P = NkB T / V and U = cV NkB T give cV P = U / V.
    const double cV = 1.5;
    for (const Vec2& taus : {Vec2{-3.0, 2.0}, Vec2{2.0, 1.0}, Vec2{1.5, -4.0}, Vec2{2.0, 2.0}}) {
        const auto g = analytic_ideal_gas(Vec2{1.7, 0.6}, taus);
        const auto d = process_identify(taus, cV);
        auto pressure = [cV](const Vec2& uv) { return uv[0] / (cV * uv[1]); };
        const double i0 = pv_log_invariant(d, pressure(g.at(0.0)), g.at(0.0)[1], cV);
        const Vec2 z0 = g.at(0.0);
        const double pvn0 = std::log(pressure(z0)) + d.polytropic_index * std::log(z0[1]);
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            const Vec2 z = g.at(t);
            CHECK(pv_log_invariant(d, pressure(z), z[1], cV) == doctest::Approx(i0).epsilon(1e-12));
            CHECK(std::log(pressure(z)) + d.polytropic_index * std::log(z[1]) == doctest::Approx(pvn0).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(pv_log_invariant(process_identify(Vec2{1.0, 2.0}, cV), -1.0, 1.0, cV), DomainError);
}
