#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "thermogeom/errors.hpp"
#include "thermogeom/gtd.hpp"
#include "thermogeom/manifold.hpp"

using namespace thermogeom;
using namespace thermogeom::gtd;

namespace {

Vec5 v5(double a, double b, double c, double d, double e)
{
    Vec5 v;
    v << a, b, c, d, e;
    return v;
}

std::vector<Vec5> random_phase_points(std::uint64_t seed, int n)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 3.0);
    std::vector<Vec5> out;
    for (int i = 0; i < n; ++i) {
        Vec5 x;
        for (int j = 0; j < 5; ++j) x[j] = (rng() & 1U ? 1.0 : -1.0) * mag(rng);
        out.push_back(x);
    }
    return out;
}

std::vector<Vec2> grid(double lo, double hi, int n)
{
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.emplace_back(lo * std::pow(hi / lo, i / (n - 1.0)), lo * std::pow(hi / lo, j / (n - 1.0)));
    return out;
}

} // namespace

TEST_CASE("Gibbs form components")
{
    CHECK(gibbs_form({PhaseRep::Energy, v5(5, 2, 3, 4, 1)}) == v5(1, -4, 1, 0, 0));
    CHECK(gibbs_form({PhaseRep::Entropy, v5(1, 2, 3, 0.5, 0.25)}) == v5(1, -0.5, -0.25, 0, 0));
    CHECK(gibbs_form({PhaseRep::Energy, v5(5, 2, 3, 0, 0)}) == v5(1, 0, 0, 0, 0));
}

TEST_CASE("phase metric")
{
    const Mat5 g = phase_metric(MetricRecipe::canonical(), {PhaseRep::Energy, v5(0, 1, 1, 1, 1)});
    // Theta = (1, -1, 1, 0, 0); the Lambda block adds -1/2 at the (S, T) and (V, P) slots.
    CHECK(g(1, 3) == doctest::Approx(-0.5));
    CHECK(g(3, 1) == doctest::Approx(-0.5));
    CHECK(g(2, 4) == doctest::Approx(-0.5));
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == -1.0);
    CHECK(g(1, 2) == -1.0);
    CHECK(g(3, 3) == 0.0);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // With a positive exponent and T = P = 0 only Theta^2 survives.
    const Mat5 t2 = phase_metric(MetricRecipe{-1.0, 0}, {PhaseRep::Energy, v5(5, 2, 3, 0, 0)});
    Mat5 expected = Mat5::Zero();
    expected(0, 0) = 1.0;
    CHECK((t2 - expected).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(phase_metric(MetricRecipe::canonical(), {PhaseRep::Energy, v5(5, 0, 3, 4, 1)}), SingularProductError);
    CHECK_THROWS_AS((MetricRecipe{0.0, -1}).validate(), std::invalid_argument);
}

TEST_CASE("Legendre transformations of the energy representation")
{
    const Vec5 x = v5(5, 2, 3, 4, 1);
    CHECK(LegendreMap(PhaseRep::Energy, 1).forward(x) == v5(-3, 4, 3, -2, 1));
    CHECK(LegendreMap(PhaseRep::Energy, 2).forward(x) == v5(8, 2, -1, 4, 3));
    CHECK(LegendreMap(PhaseRep::Energy, 3).forward(x) == v5(0, 4, -1, -2, 3));
    CHECK(LegendreMap(PhaseRep::Energy, 0).forward(x) == x);

    const LegendreMap helmholtz(PhaseRep::Energy, 1);
    CHECK(helmholtz.forward(helmholtz.forward(x)) == v5(5, -2, 3, -4, 1));
    CHECK(legendre_transform_point(PhaseRep::Energy, 1, {PhaseRep::Energy, x}).coords == v5(-3, 4, 3, -2, 1));
    CHECK_THROWS_AS(LegendreMap(PhaseRep::Energy, 4), std::invalid_argument);
}

TEST_CASE("Legendre maps invert and have the right Jacobian")
{
    for (PhaseRep rep : {PhaseRep::Energy, PhaseRep::Entropy}) {
        for (int which = 0; which <= 3; ++which) {
            const LegendreMap map(rep, which);
            for (const Vec5& x : random_phase_points(3 + which, 20)) {
                CHECK((map.inverse(map.forward(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((map.forward(map.inverse(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
                const Mat5 j = map.jacobian(x);
                for (int c = 0; c < 5; ++c) {
                    const double h = 1e-6;
                    Vec5 xp = x;
                    Vec5 xm = x;
                    xp[c] += h;
                    xm[c] -= h;
                    const Vec5 col = (map.forward(xp) - map.forward(xm)) / (2 * h);
                    CHECK((col - j.col(c)).cwiseAbs().maxCoeff() < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("Legendre invariance of Theta and G")
{
    const auto samples = random_phase_points(42, 50);
    for (PhaseRep rep : {PhaseRep::Energy, PhaseRep::Entropy}) {
        const auto id = legendre_pushforward_check(rep, 0, MetricRecipe::canonical(), samples);
        CHECK(id.metric == 0.0);
        CHECK(id.gibbs == 0.0);
        for (int which = 1; which <= 3; ++which) {
            for (const MetricRecipe r : {MetricRecipe::canonical(), MetricRecipe{-2.5, 1}, MetricRecipe{0.7, -2}}) {
                const auto res = legendre_pushforward_check(rep, which, r, samples);
                CHECK(res.metric < 1e-9);
                CHECK(res.gibbs < 1e-9);
            }
        }
    }
}

TEST_CASE("induced entropy metric")
{
    const thermo::GasParameters p;
    const auto m = induce_metric(thermo::ideal_gas_entropy(p), MetricRecipe::canonical());
    const Mat2 g = m.field.at(Vec2{2.0, 4.0});
    CHECK(g(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g(1, 1) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(g(0, 1) == 0.0);
    CHECK(m.representation() == thermo::Representation::Entropy);
    CHECK(m.field.derivative_source() == manifold::DerivativeSource::Analytic);

    for (const Vec2& x : grid(0.1, 10.0, 10)) {
        const Mat2 closed = ideal_gas_entropy_metric_closed_form(p, MetricRecipe::canonical(), x);
        CHECK((m.field.at(x) - closed).cwiseAbs().maxCoeff() <= 1e-10 * closed.cwiseAbs().maxCoeff());
    }

    // General recipe: -(NkB)^(2k+2) Lambda [cV^(2k+2) dU^2/U^2 + dV^2/V^2], written out for k = 0 and k = 1.
    thermo::GasParameters q;
    q.NkB = 1.3;
    q.cV = 2.5;
    const Vec2 x{1.7, 0.6};
    const auto m0 = induce_metric(thermo::ideal_gas_entropy(q), MetricRecipe{-2.0, 0});
    CHECK(m0.field.at(x)(0, 0) == doctest::Approx(2.0 * 1.69 * 6.25 / (1.7 * 1.7)).epsilon(1e-13));
    CHECK(m0.field.at(x)(1, 1) == doctest::Approx(2.0 * 1.69 / 0.36).epsilon(1e-13));
    const auto m1 = induce_metric(thermo::ideal_gas_entropy(q), MetricRecipe{0.5, 1});
    const double n4 = std::pow(1.3, 4);
    CHECK(m1.field.at(x)(0, 0) == doctest::Approx(-0.5 * n4 * std::pow(2.5, 4) / (1.7 * 1.7)).epsilon(1e-13));
    CHECK(m1.field.at(x)(1, 1) == doctest::Approx(-0.5 * n4 / 0.36).epsilon(1e-13));
}

TEST_CASE("induced energy metric is non-diagonal and flat")
{
    const thermo::GasParameters p;
    const auto m = induce_metric(thermo::ideal_gas_energy(p), MetricRecipe::canonical());
    // Closed form in (S, V) for NkB = 1, S0 = 0, U0 = V0 = 1, obtained by hand:
    // g = -dS^2/(cV S) + (1 - S)/(cV S V) dS dV + (cV + 1)/(cV V^2) dV^2.
    const double c = p.cV;
    for (const Vec2& x : {Vec2{0.7, 2.0}, Vec2{3.0, 0.4}, Vec2{-1.5, 1.1}}) {
        const Mat2 g = m.field.at(x);
        const double S = x[0];
        const double V = x[1];
        CHECK(g(0, 0) == doctest::Approx(-1.0 / (c * S)).epsilon(1e-12));
        CHECK(g(0, 1) == doctest::Approx((1.0 - S) / (2.0 * c * S * V)).epsilon(1e-12));
        CHECK(g(1, 1) == doctest::Approx((c + 1.0) / (c * V * V)).epsilon(1e-12));
        CHECK(manifold::curvature(m.field, x).max_abs_riemann() < 1e-8);
    }
    CHECK(m.field.at(Vec2{0.7, 2.0})(0, 1) != 0.0);
    CHECK_THROWS_AS(manifold::christoffel(m.field, Vec2{0.0, 1.0}), Error);
}

TEST_CASE("Massieu metrics")
{
    const auto ms = induce_massieu_metrics(thermo::GasParameters{});
    const Mat2 g1 = ms[0].field.at(Vec2{2.0, 1.0});
    CHECK(g1(0, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g1(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g1(0, 1) == 0.0);
    CHECK((ms[2].field.at(Vec2{1.0, 1.0}) - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(ms[0].field.chart() == Chart::BetaV);
    CHECK(ms[1].field.chart() == Chart::UTheta);
    CHECK(ms[2].field.chart() == Chart::BetaTheta);

    thermo::GasParameters q;
    q.NkB = 2.0;
    q.cV = 2.5;
    const auto mq = induce_massieu_metrics(q);
    for (const auto& m : mq) {
        for (const Vec2& x : grid(0.1, 10.0, 6)) {
            const Mat2 g = m.field.at(x);
            CHECK(g(0, 0) == doctest::Approx(1.0 / (x[0] * x[0])).epsilon(1e-12));
            CHECK(g(1, 1) == doctest::Approx(1.0 / (x[1] * x[1])).epsilon(1e-12));
            CHECK(manifold::curvature(m.field, x).max_abs_riemann() < 1e-8);
        }
    }
}

TEST_CASE("first law on the equilibrium space")
{
    thermo::GasParameters p;
    p.NkB = 1.2;
    p.S0 = 0.3;
    const auto c = p.with_consistent_massieu_constants();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::vector<Vec2> pts;
    for (int i = 0; i < 100; ++i) pts.emplace_back(u(rng), u(rng));

    CHECK(check_first_law(thermo::ideal_gas_entropy(p), pts) < 1e-12);
    CHECK(check_first_law(thermo::ideal_gas_energy(p), pts) < 1e-12);
    for (int i = 1; i <= 3; ++i) CHECK(check_first_law(thermo::massieu_function(c, i), pts) < 1e-12);

    Embedding e = embed(thermo::ideal_gas_entropy(p), Vec2{2.0, 3.0});
    CHECK(first_law_residual(e) < 1e-15);
    e.point.coords[3] += 1e-3;
    CHECK(first_law_residual(e) == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("Massieu embeddings land on the entropy equilibrium surface")
{
    thermo::GasParameters p;
    p.NkB = 1.5;
    p.U0 = 2.0;
    const auto c = p.with_consistent_massieu_constants();
    const auto s = thermo::ideal_gas_entropy(c);
    for (int i = 1; i <= 3; ++i) {
        const auto fe = thermo::massieu_function(c, i);
        const Embedding e = embed_in_original_coordinates(fe, Vec2{0.8, 1.7});
        CHECK(e.point.rep == PhaseRep::Entropy);
        const Vec5& y = e.point.coords;  // (S, U, V, beta, theta)
        CHECK(y[0] == doctest::Approx(s.value(Vec2{y[1], y[2]})).epsilon(1e-12));
        CHECK(y[3] == doctest::Approx(c.NkB * c.cV / y[1]).epsilon(1e-12));
        CHECK(y[4] == doctest::Approx(c.NkB / y[2]).epsilon(1e-12));
        CHECK(first_law_residual(e) < 1e-12);
    }
}

TEST_CASE("pullback of G agrees with the induced metric")
{
    thermo::GasParameters p;
    p.NkB = 1.1;
    p.cV = 2.5;
    const auto c = p.with_consistent_massieu_constants();
    std::vector<thermo::FundamentalEquation> fes{thermo::ideal_gas_entropy(c), thermo::ideal_gas_energy(c)};
    for (int i = 1; i <= 3; ++i) fes.push_back(thermo::massieu_function(c, i));
    for (const auto& fe : fes) {
        for (const MetricRecipe r : {MetricRecipe::canonical(), MetricRecipe{1.5, 0}, MetricRecipe{-0.5, -2}}) {
            const auto m = induce_metric(fe, r);
            for (const Vec2& x : {Vec2{0.6, 1.9}, Vec2{2.2, 0.8}}) {
                const Mat2 a = pullback_metric(fe, r, x);
                const Mat2 b = m.field.at(x);
                CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()));
            }
        }
    }
}

TEST_CASE("analytic metric partials match finite differences")
{
    const thermo::GasParameters p;
    std::vector<InducedMetric> ms{induce_metric(thermo::ideal_gas_entropy(p), MetricRecipe::canonical()),
                                  induce_metric(thermo::ideal_gas_energy(p), MetricRecipe::canonical())};
    for (const auto& m : induce_massieu_metrics(p)) ms.push_back(m);
    for (const auto& m : ms) {
        const auto fd = m.field.with_finite_differences();
        for (const Vec2& x : {Vec2{0.5, 2.0}, Vec2{3.0, 0.7}}) {
            const auto a = m.field.partials(x);
            const auto b = fd.partials(x);
            for (int k = 0; k < 2; ++k)
                CHECK((a[k] - b[k]).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, a[k].cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("entropy metric is invariant under uniform rescaling")
{
    const auto m = induce_metric(thermo::ideal_gas_entropy(thermo::GasParameters{}), MetricRecipe::canonical());
    for (double lambda : {0.3, 2.0, 7.5}) {
        for (const Vec2& x : grid(0.2, 5.0, 4)) {
            const Mat2 scaled = lambda * lambda * m.field.at(lambda * x);
            CHECK((scaled - m.field.at(x)).cwiseAbs().maxCoeff() <= 1e-12 * m.field.at(x).cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("signed powers")
{
    CHECK(signed_power(2.0, -3) == 0.125);
    CHECK(signed_power(-2.0, 3) == -8.0);
    CHECK(signed_power(0.0, 1) == 0.0);
    CHECK(signed_power(5.0, 0) == 1.0);
    CHECK_THROWS_AS(signed_power(0.0, -1), SingularProductError);
}
