#include "thermogeom/gtd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "thermogeom/errors.hpp"

namespace thermogeom::gtd {

namespace {

// Sign with which the second extensive/intensive pair enters the Gibbs form:
// +P dV in the energy representation, -theta dV in the entropy representation.
double pair2_sign(PhaseRep rep) { return rep == PhaseRep::Energy ? 1.0 : -1.0; }

bool uses_pair1(int which) { return which == 1 || which == 3; }
bool uses_pair2(int which) { return which == 2 || which == 3; }

} // namespace

double signed_power(double base, int exponent)
{
    if (exponent < 0 && base == 0.0) {
        throw SingularProductError("zero product raised to the negative power " + std::to_string(exponent));
    }
    double result = 1.0;
    double b = exponent < 0 ? 1.0 / base : base;
    unsigned n = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    while (n) {
        if (n & 1U) result *= b;
        b *= b;
        n >>= 1U;
    }
    return result;
}

PhaseRep phase_rep_of(thermo::Representation rep)
{
    return rep == thermo::Representation::Energy ? PhaseRep::Energy : PhaseRep::Entropy;
}

Vec5 gibbs_form(const PhasePoint& p)
{
    Vec5 theta;
    theta << 1.0, -p.coords[3], pair2_sign(p.rep) * p.coords[4], 0.0, 0.0;
    return theta;
}

void MetricRecipe::validate() const
{
    if (!std::isfinite(lambda) || lambda == 0.0) throw std::invalid_argument("metric recipe needs a nonzero Lambda");
}

Mat5 phase_metric(const MetricRecipe& recipe, const PhasePoint& p)
{
    recipe.validate();
    const Vec5 theta = gibbs_form(p);
    Mat5 g = theta * theta.transpose();
    const Vec5& x = p.coords;
    const int m = recipe.exponent();
    const double c1 = 0.5 * recipe.lambda * signed_power(x[1] * x[3], m);
    const double c2 = 0.5 * recipe.lambda * signed_power(x[2] * x[4], m);
    g(1, 3) += c1;
    g(3, 1) += c1;
    g(2, 4) += c2;
    g(4, 2) += c2;
    return g;
}

LegendreMap::LegendreMap(PhaseRep rep, int which) : rep_(rep), which_(which)
{
    if (which < 0 || which > 3) throw std::invalid_argument("Legendre map index must be 0..3");
}

// Pair 1: potential -= x1 x3, (x1, x3) -> (x3, -x1).
// Pair 2: potential += s x2 x4, (x2, x4) -> (-s x4, s x2).
Vec5 LegendreMap::forward(const Vec5& x) const
{
    Vec5 y = x;
    const double s = pair2_sign(rep_);
    if (uses_pair1(which_)) {
        y[0] -= x[1] * x[3];
        y[1] = x[3];
        y[3] = -x[1];
    }
    if (uses_pair2(which_)) {
        y[0] += s * x[2] * x[4];
        y[2] = -s * x[4];
        y[4] = s * x[2];
    }
    return y;
}

Vec5 LegendreMap::inverse(const Vec5& y) const
{
    Vec5 x = y;
    const double s = pair2_sign(rep_);
    if (uses_pair1(which_)) {
        x[1] = -y[3];
        x[3] = y[1];
        x[0] -= y[1] * y[3];
    }
    if (uses_pair2(which_)) {
        x[2] = s * y[4];
        x[4] = -s * y[2];
        x[0] += s * y[2] * y[4];
    }
    return x;
}

Mat5 LegendreMap::jacobian(const Vec5& x) const
{
    Mat5 j = Mat5::Identity();
    const double s = pair2_sign(rep_);
    if (uses_pair1(which_)) {
        j(0, 1) -= x[3];
        j(0, 3) -= x[1];
        j.row(1).setZero();
        j(1, 3) = 1.0;
        j.row(3).setZero();
        j(3, 1) = -1.0;
    }
    if (uses_pair2(which_)) {
        j(0, 2) += s * x[4];
        j(0, 4) += s * x[2];
        j.row(2).setZero();
        j(2, 4) = -s;
        j.row(4).setZero();
        j(4, 2) = s;
    }
    return j;
}

PhasePoint legendre_transform_point(PhaseRep rep, int which, const PhasePoint& p)
{
    if (p.rep != rep) throw std::invalid_argument("phase point representation does not match the map");
    return {rep, LegendreMap(rep, which).forward(p.coords)};
}

InvarianceResidual legendre_pushforward_check(PhaseRep rep, int which, const MetricRecipe& recipe,
                                              std::span<const Vec5> samples)
{
    if (which == -1) {
        InvarianceResidual worst;
        for (int w = 1; w <= 3; ++w) {
            const InvarianceResidual r = legendre_pushforward_check(rep, w, recipe, samples);
            worst.metric = std::max(worst.metric, r.metric);
            worst.gibbs = std::max(worst.gibbs, r.gibbs);
        }
        return worst;
    }
    const LegendreMap map(rep, which);
    InvarianceResidual out;
    for (const Vec5& x : samples) {
        const PhasePoint p{rep, x};
        const PhasePoint q{rep, map.forward(x)};
        const Mat5 j = map.jacobian(x);
        const Mat5 pulled = j.transpose() * phase_metric(recipe, q) * j;
        out.metric = std::max(out.metric, (pulled - phase_metric(recipe, p)).cwiseAbs().maxCoeff());
        const Vec5 theta_pulled = j.transpose() * gibbs_form(q);
        out.gibbs = std::max(out.gibbs, (theta_pulled - gibbs_form(p)).cwiseAbs().maxCoeff());
    }
    return out;
}

Embedding embed(const thermo::FundamentalEquation& fe, const Vec2& x)
{
    const thermo::Jet j = fe.jet(x);
    const PhaseRep rep = phase_rep_of(fe.representation());
    const double s = pair2_sign(rep);
    Embedding e;
    e.point.rep = rep;
    e.point.coords << j.value, x[0], x[1], j.d1[0], -s * j.d1[1];
    for (int a = 0; a < 2; ++a) {
        e.tangents(0, a) = j.d1[a];
        e.tangents(1, a) = a == 0 ? 1.0 : 0.0;
        e.tangents(2, a) = a == 1 ? 1.0 : 0.0;
        e.tangents(3, a) = j.d2(0, a);
        e.tangents(4, a) = -s * j.d2(1, a);
    }
    return e;
}

Embedding embed_in_original_coordinates(const thermo::FundamentalEquation& fe, const Vec2& x)
{
    Embedding e = embed(fe, x);
    int which = 0;
    switch (fe.representation()) {
    case thermo::Representation::Massieu1: which = 1; break;
    case thermo::Representation::Massieu2: which = 2; break;
    case thermo::Representation::Massieu3: which = 3; break;
    default: return e;
    }
    const LegendreMap map(PhaseRep::Entropy, which);
    const Vec5 original = map.inverse(e.point.coords);
    const Mat5 j = map.jacobian(original);
    e.tangents = j.fullPivLu().solve(e.tangents);
    e.point.coords = original;
    return e;
}

double first_law_residual(const Embedding& e)
{
    const Eigen::RowVector2d r = gibbs_form(e.point).transpose() * e.tangents;
    return r.cwiseAbs().maxCoeff();
}

double check_first_law(const thermo::FundamentalEquation& fe, std::span<const Vec2> samples)
{
    double worst = 0.0;
    for (const Vec2& x : samples) worst = std::max(worst, first_law_residual(embed(fe, x)));
    return worst;
}

Mat2 pullback_metric(const thermo::FundamentalEquation& fe, const MetricRecipe& recipe, const Vec2& x)
{
    const Embedding e = embed(fe, x);
    return e.tangents.transpose() * phase_metric(recipe, e.point) * e.tangents;
}

InducedMetric induce_metric(const thermo::FundamentalEquation& fe, const MetricRecipe& recipe)
{
    recipe.validate();
    const double lambda = recipe.lambda;
    const int m = recipe.exponent();

    manifold::MetricField::Components components = [fe, lambda, m](const Vec2& x) {
        const thermo::Jet j = fe.jet(x);
        const double a = signed_power(x[0] * j.d1[0], m);
        const double b = signed_power(x[1] * j.d1[1], m);
        Mat2 g;
        g(0, 0) = lambda * a * j.d2(0, 0);
        g(1, 1) = lambda * b * j.d2(1, 1);
        g(0, 1) = g(1, 0) = 0.5 * lambda * (a + b) * j.d2(0, 1);
        return g;
    };

    manifold::MetricField::Partials partials;
    if (fe.has_third_order()) {
        partials = [fe, lambda, m](const Vec2& x) {
            const thermo::Jet j = fe.jet(x);
            const double p1 = x[0] * j.d1[0];
            const double p2 = x[1] * j.d1[1];
            const double a = signed_power(p1, m);
            const double b = signed_power(p2, m);
            const double da_base = m * signed_power(p1, m - 1);
            const double db_base = m * signed_power(p2, m - 1);
            std::array<Mat2, 2> d;
            for (int c = 0; c < 2; ++c) {
                const double da = da_base * ((c == 0 ? j.d1[0] : 0.0) + x[0] * j.d2(0, c));
                const double db = db_base * ((c == 1 ? j.d1[1] : 0.0) + x[1] * j.d2(1, c));
                const Mat2& f3 = j.d3[c];
                d[c](0, 0) = lambda * (da * j.d2(0, 0) + a * f3(0, 0));
                d[c](1, 1) = lambda * (db * j.d2(1, 1) + b * f3(1, 1));
                d[c](0, 1) = d[c](1, 0) = 0.5 * lambda * ((da + db) * j.d2(0, 1) + (a + b) * f3(0, 1));
            }
            return d;
        };
    }

    manifold::MetricField field(
        fe.chart(), std::move(components), [fe](const Vec2& x) { return fe.contains(x); }, std::move(partials));
    return InducedMetric{std::move(field), fe, recipe};
}

std::array<InducedMetric, 3> induce_massieu_metrics(const thermo::GasParameters& params)
{
    const auto fes = thermo::massieu_functions(params);
    const MetricRecipe recipe = MetricRecipe::canonical();
    return {induce_metric(fes[0], recipe), induce_metric(fes[1], recipe), induce_metric(fes[2], recipe)};
}

Mat2 ideal_gas_entropy_metric_closed_form(const thermo::GasParameters& params, const MetricRecipe& recipe,
                                          const Vec2& uv)
{
    const int e = 2 * recipe.k + 2;
    const double prefactor = -signed_power(params.NkB, e) * recipe.lambda;
    Mat2 g = Mat2::Zero();
    g(0, 0) = prefactor * signed_power(params.cV, e) / (uv[0] * uv[0]);
    g(1, 1) = prefactor / (uv[1] * uv[1]);
    return g;
}

} // namespace thermogeom::gtd
