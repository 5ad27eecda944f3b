#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "thermogeom/chart.hpp"

namespace thermogeom::thermo {

/// Ideal-gas constants. NkB is the product N k_B; cV the dimensionless heat
/// capacity at constant volume.
struct GasParameters {
    double NkB = 1.0;
    double cV = 1.5;
    double S0 = 0.0;
    double U0 = 1.0;
    double V0 = 1.0;
    double S01 = 0.0;
    double S02 = 0.0;
    double S03 = 0.0;

    /// Throws std::invalid_argument unless NkB, cV, U0, V0 are positive and finite.
    void validate() const;

    /// Copy with S01..S03 chosen so that the Massieu functions equal the
    /// Legendre transforms S - U beta, S - V theta, S - U beta - V theta of
    /// the entropy built from S0, U0, V0.
    GasParameters with_consistent_massieu_constants() const;
};

enum class Representation { Entropy, Energy, Massieu1, Massieu2, Massieu3 };

std::string_view representation_name(Representation rep);
std::optional<Representation> parse_representation(std::string_view name);
Chart chart_of(Representation rep);

/// Value and partials of a potential f(x1, x2) up to third order.
/// d3[c](a, b) holds d^3 f / dx^a dx^b dx^c.
struct Jet {
    double value = 0.0;
    Vec2 d1 = Vec2::Zero();
    Mat2 d2 = Mat2::Zero();
    std::array<Mat2, 2> d3{Mat2::Zero(), Mat2::Zero()};
};

/// A thermodynamic potential in one representation. Any potential can be
/// plugged in through the evaluator; the ideal-gas factories below are the
/// ones shipped.
class FundamentalEquation {
public:
    using Evaluator = std::function<Jet(const Vec2&)>;
    using Domain = std::function<bool(const Vec2&)>;

    /// `third_order` declares whether the evaluator fills Jet::d3.
    FundamentalEquation(Representation rep, Evaluator evaluator, Domain domain = {}, GasParameters params = {},
                        bool third_order = true);

    Representation representation() const noexcept { return rep_; }
    Chart chart() const noexcept { return chart_of(rep_); }
    const GasParameters& params() const noexcept { return params_; }
    bool has_third_order() const noexcept { return third_order_; }

    bool contains(const Vec2& x) const;

    /// Throws DomainError outside the domain.
    Jet jet(const Vec2& x) const;
    double value(const Vec2& x) const { return jet(x).value; }
    Vec2 gradient(const Vec2& x) const { return jet(x).d1; }
    Mat2 hessian(const Vec2& x) const { return jet(x).d2; }

private:
    Representation rep_;
    Evaluator evaluator_;
    Domain domain_;
    GasParameters params_;
    bool third_order_;
};

/// S(U, V) = S0 + NkB cV ln(U/U0) + NkB ln(V/V0), U > 0, V > 0.
FundamentalEquation ideal_gas_entropy(const GasParameters& params);

/// Exact inverse of the entropy: U(S, V) = U0 exp((S - S0)/(NkB cV)) (V/V0)^(-1/cV).
/// The reference constants stay attached to their own variables.
FundamentalEquation ideal_gas_energy(const GasParameters& params);

/// S1(beta, V), S2(U, theta), S3(beta, theta) in that order.
std::array<FundamentalEquation, 3> massieu_functions(const GasParameters& params);
FundamentalEquation massieu_function(const GasParameters& params, int which);

/// Representation coordinates plus the conjugate intensives read off the
/// first partials: (beta, theta) in the entropy representation, (T, P) in
/// the energy representation, and (dS_i/dx1, dS_i/dx2) for Massieu functions.
struct StatePoint {
    Representation rep;
    Vec2 coords;
    Vec2 intensives;
};

StatePoint state_equations(const FundamentalEquation& fe, const Vec2& x);

/// 1/T = NkB cV / U.
double inverse_temperature(const GasParameters& params, double U);
/// P/T = NkB / V.
double pressure_over_temperature(const GasParameters& params, double V);

struct SecondLawEntry {
    Vec2 coords;
    Vec2 eigenvalues;  ///< ascending
    bool pass;
};

struct SecondLawReport {
    std::vector<SecondLawEntry> entries;
    std::size_t failures = 0;
    bool all_pass() const noexcept { return failures == 0; }
};

/// Entropy potentials must have a negative semidefinite Hessian, energy
/// potentials a positive semidefinite one. Massieu functions are concave in
/// their extensive argument and convex in their intensive argument, which is
/// checked on the diagonal. Tolerance on the sign test is 1e-12 relative to
/// the Hessian scale.
SecondLawReport check_second_law(const FundamentalEquation& fe, std::span<const Vec2> samples);

enum class ThirdLaw { Allowed, Excluded };

/// The origin of the log chart is the minimum-entropy state S = S0 and is removed
/// from the equilibrium space.
ThirdLaw check_third_law_point(const GasParameters& params, const Vec2& log_coords);

// Coordinate changes on the ideal-gas equilibrium space.
Vec2 log_from_uv(const GasParameters& params, const Vec2& uv);
Vec2 uv_from_log(const GasParameters& params, const Vec2& log_coords);
/// Supports UVEntropy, XiEtaLog, BetaV, UTheta, BetaTheta and SVEnergy.
Vec2 uv_from_chart(const GasParameters& params, Chart chart, const Vec2& x);
Vec2 chart_from_uv(const GasParameters& params, Chart chart, const Vec2& uv);

/// S0 + NkB (cV xi + eta).
double entropy_from_log(const GasParameters& params, const Vec2& log_coords);

} // namespace thermogeom::thermo
