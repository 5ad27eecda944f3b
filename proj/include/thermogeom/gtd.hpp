#pragma once

// Phase-space structures of geometrothermodynamics: the Gibbs 1-form, the
// Legendre-invariant phase metric G, the three Legendre transformations in
// each representation, and the metric induced on the equilibrium space.

#include <array>
#include <span>

#include <Eigen/Core>

#include "thermogeom/manifold.hpp"
#include "thermogeom/thermo.hpp"

namespace thermogeom::gtd {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat52 = Eigen::Matrix<double, 5, 2>;

/// Energy coordinates are (U, S, V, T, P); entropy coordinates (S, U, V, beta, theta).
enum class PhaseRep { Energy, Entropy };

PhaseRep phase_rep_of(thermo::Representation rep);

struct PhasePoint {
    PhaseRep rep;
    Vec5 coords;
};

/// Covector components of dU - T dS + P dV or dS - beta dU - theta dV.
Vec5 gibbs_form(const PhasePoint& p);

/// Conformal factor Lambda (a nonzero constant) and integer exponent k.
struct MetricRecipe {
    double lambda = -1.0;
    int k = -1;

    /// Lambda = -1, k = -1.
    static MetricRecipe canonical() { return {}; }
    int exponent() const noexcept { return 2 * k + 1; }
    /// Throws std::invalid_argument for Lambda == 0 or non-finite Lambda.
    void validate() const;
};

/// Matrix of  Theta^2 + Lambda [ (x1 y1)^(2k+1) dx1 dy1 + (x2 y2)^(2k+1) dx2 dy2 ]
/// where (x_i, y_i) are the conjugate extensive/intensive pairs. A term
/// c dx dy puts c/2 in both the (x, y) and (y, x) slots. Throws
/// SingularProductError for a zero product under a negative exponent.
Mat5 phase_metric(const MetricRecipe& recipe, const PhasePoint& p);

/// One of the three Legendre transformations of a representation, or the
/// identity (which == 0).
class LegendreMap {
public:
    LegendreMap(PhaseRep rep, int which);

    PhaseRep rep() const noexcept { return rep_; }
    int which() const noexcept { return which_; }

    Vec5 forward(const Vec5& x) const;
    Vec5 inverse(const Vec5& y) const;
    /// d forward / dx at x.
    Mat5 jacobian(const Vec5& x) const;

private:
    PhaseRep rep_;
    int which_;
};

PhasePoint legendre_transform_point(PhaseRep rep, int which, const PhasePoint& p);

struct InvarianceResidual {
    double metric = 0.0;  ///< max |J^T G(L(x)) J - G(x)|
    double gibbs = 0.0;   ///< max |J^T Theta(L(x)) - Theta(x)|
};

/// Pulls G and Theta at L(x) back through the Jacobian of L and compares with
/// G and Theta at x. which == 0 checks the identity; which == -1 checks all three maps.
InvarianceResidual legendre_pushforward_check(PhaseRep rep, int which, const MetricRecipe& recipe,
                                              std::span<const Vec5> samples);

/// Image of an equilibrium state in phase space together with the two
/// coordinate tangents d(point)/dx^a. Massieu representations embed in the
/// transformed entropy coordinates (S_i, x1, x2, dS_i/dx1, dS_i/dx2).
struct Embedding {
    PhasePoint point;
    Mat52 tangents;
};

Embedding embed(const thermo::FundamentalEquation& fe, const Vec2& x);

/// Massieu embeddings mapped back to (S, U, V, beta, theta) through the
/// inverse Legendre transformation; identity for the other representations.
Embedding embed_in_original_coordinates(const thermo::FundamentalEquation& fe, const Vec2& x);

/// max_a |Theta(tangent_a)|.
double first_law_residual(const Embedding& e);
double check_first_law(const thermo::FundamentalEquation& fe, std::span<const Vec2> samples);

/// g = J^T G J from the phase metric and the embedding.
Mat2 pullback_metric(const thermo::FundamentalEquation& fe, const MetricRecipe& recipe, const Vec2& x);

/// Metric field induced on the equilibrium space, with its provenance.
struct InducedMetric {
    manifold::MetricField field;
    thermo::FundamentalEquation potential;
    MetricRecipe recipe;

    thermo::Representation representation() const { return potential.representation(); }
};

/// Lambda { (x1 f_1)^m f_11 dx1^2 + (x2 f_2)^m f_22 dx2^2
///          + [(x1 f_1)^m + (x2 f_2)^m] f_12 dx1 dx2 },  m = 2k+1,
/// for the potential f of `fe` in its own coordinates. Partials of the field
/// are analytic when the potential carries third derivatives.
InducedMetric induce_metric(const thermo::FundamentalEquation& fe, const MetricRecipe& recipe);

/// Metrics of the three Massieu representations, induced with the canonical recipe.
std::array<InducedMetric, 3> induce_massieu_metrics(const thermo::GasParameters& params);

/// -(NkB)^(2k+2) Lambda [cV^(2k+2) dU^2/U^2 + dV^2/V^2].
Mat2 ideal_gas_entropy_metric_closed_form(const thermo::GasParameters& params, const MetricRecipe& recipe,
                                          const Vec2& uv);

/// Odd integer power that refuses a zero base under a negative exponent.
double signed_power(double base, int exponent);

} // namespace thermogeom::gtd
