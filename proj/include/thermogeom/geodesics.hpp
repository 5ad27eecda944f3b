#pragma once

// Geodesics of equilibrium metrics: numerical integration, the closed-form
// ideal-gas solutions, second-law classification of processes, the region
// of states reachable from an initial state, and process identification.

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "thermogeom/manifold.hpp"
#include "thermogeom/thermo.hpp"

namespace thermogeom::geodesics {

/// Relaxation time of a coordinate that stays constant along the geodesic.
inline constexpr double kConstantCoordinate = std::numeric_limits<double>::infinity();

struct GeodesicIVP {
    manifold::MetricField metric;
    Vec2 start;
    Vec2 velocity;
    double tau_max = 1.0;
    /// Initial (and largest) step; zero selects tau_max / 1000.
    double step = 0.0;
    double tolerance = 1e-9;
};

struct TraceSample {
    double tau;
    Vec2 x;
    Vec2 v;
};

enum class TraceStatus { Complete, DomainExit };

struct GeodesicTrace {
    Chart chart = Chart::Plane;
    std::vector<TraceSample> samples;
    TraceStatus status = TraceStatus::Complete;
    /// Integral of sqrt(|g(v, v)|) over the sampled parameter range.
    double arc_length = 0.0;
    /// max |log ratio - initial log ratio|; NaN on charts without an
    /// exponential geodesic family.
    double conserved_ratio_drift = std::numeric_limits<double>::quiet_NaN();
    /// Set by connect() when the samples run from `final` back to `initial`.
    bool reversed = false;
};

/// Integrates x'' = -Gamma(x)(x', x'). A curve leaving the domain returns the
/// partial trace with TraceStatus::DomainExit. Throws DomainError for a start
/// outside the domain, StepUnderflowError when the tolerance cannot be met.
/// A zero initial velocity yields a single-sample trace.
GeodesicTrace integrate(const GeodesicIVP& ivp);

/// Z(tau) = Z0 exp(tau / tau_Z) componentwise; kConstantCoordinate marks a
/// constant component.
class AnalyticGeodesicIG {
public:
    AnalyticGeodesicIG(const Vec2& start, const Vec2& taus);

    const Vec2& start() const noexcept { return start_; }
    const Vec2& taus() const noexcept { return taus_; }
    /// 1 / tau_Z, zero for a constant component.
    Vec2 rates() const;
    Vec2 at(double tau) const;
    Vec2 velocity(double tau) const;

private:
    Vec2 start_;
    Vec2 taus_;
};

AnalyticGeodesicIG analytic_ideal_gas(const Vec2& start, const Vec2& taus);

/// Relaxation times from the velocity: tau_Z = Z / Z'.
Vec2 relaxation_times_from_velocity(const Vec2& start, const Vec2& velocity);

/// Logarithm of the conserved ratio Z1^tau_1 / Z2^tau_2, that is
/// tau_1 ln Z1 - tau_2 ln Z2. With one constant component the conserved
/// quantity is the logarithm of that component; with both constant it is ln Z1.
double conserved_log_ratio(const Vec2& taus, const Vec2& x);

std::vector<double> conserved_ratio(const AnalyticGeodesicIG& g, std::span<const double> taus);

/// Fits the relaxation times from the endpoint log-slopes of the trace.
/// Log-chart traces are read as logarithms directly.
Vec2 fit_relaxation_times(const GeodesicTrace& trace);
/// One value per sample. Throws DomainError for a nonpositive coordinate.
std::vector<double> conserved_ratio(const GeodesicTrace& trace);

enum class Verdict { Allowed, Adiabatic, Forbidden };
std::string_view verdict_name(Verdict v);

struct ProcessClassification {
    double delta_xi;
    double delta_eta;
    double delta_S;  ///< NkB (cV dxi + deta)
    Verdict verdict;
};

/// Second-law verdict for the process initial -> final on the log chart.
/// |cV dxi + deta| <= 1e-12 (|cV dxi| + |deta| + 1) counts as adiabatic.
/// Throws ThirdLawError if either state is the origin.
ProcessClassification classify(const Vec2& initial, const Vec2& final_state, double cV, double NkB = 1.0);

/// Line of constant entropy through the initial state in intercept form
/// xi / xi_intercept + eta / eta_intercept = 1.
struct AdiabatLine {
    double xi_intercept;
    double eta_intercept;

    /// xi / xi_intercept + eta / eta_intercept.
    double evaluate(const Vec2& log_coords) const;
};

AdiabatLine adiabat_line(const Vec2& initial, double cV);

struct RegionGeometry {
    Vec2 initial;
    double tan_alpha;
    double tan_alpha_prime;
    Vec2 xi_axis_point;   ///< (xi_i + eta_i / cV, 0)
    Vec2 eta_axis_point;  ///< (0, eta_i + cV xi_i)
    double area_nc;       ///< (cV xi_i + eta_i)^2 / (2 cV)

    double alpha_deg() const;
    double alpha_prime_deg() const;
};

/// Throws ThirdLawError for the origin and DomainError when the adiabat
/// through `initial` passes through the origin.
RegionGeometry region_geometry(const Vec2& initial, double cV);

struct MonteCarloArea {
    double estimate;
    double box_area;
    std::uint64_t samples;
    std::uint64_t hits;
};

/// Rejection sampling of the forbidden region inside the positive quadrant:
/// uniform points in a box enclosing the adiabat intercepts, counted when the
/// process from `initial` to the point would lower the entropy.
MonteCarloArea monte_carlo_nc_area(const Vec2& initial, double cV, std::uint64_t samples, std::uint64_t seed);

enum class ProcessKind { Adiabatic, Isobaric, Isothermal, Isochoric, Polytropic };
std::string_view process_kind_name(ProcessKind kind);

struct ProcessDescriptor {
    ProcessKind kind;
    double tau_ratio;         ///< tau_U / tau_V
    double polytropic_index;  ///< n = 1 - tau_V / tau_U, infinite for isochoric
    /// (cV P)^pressure_exponent V^volume_exponent is conserved.
    double pressure_exponent;
    double volume_exponent;
};

/// Adiabatic iff tau_U / tau_V = -cV within 1e-12 relative; otherwise
/// polytropic with n = 1 - tau_V / tau_U. Throws std::invalid_argument for
/// tau_U == 0 or tau_V == 0.
ProcessDescriptor process_identify(const Vec2& taus, double cV);

/// pressure_exponent ln(cV P) + volume_exponent ln V.
double pv_log_invariant(const ProcessDescriptor& d, double P, double V, double cV);

/// Boundary-value geodesic between two states of the log chart (straight
/// segment) or the (U, V) chart (its exponential image), parametrized on
/// tau in [0, 1] at constant speed and oriented so that entropy does not
/// decrease. Throws ThirdLawError for an origin endpoint or a segment through
/// the origin.
GeodesicTrace connect(const manifold::MetricField& metric, const Vec2& initial, const Vec2& final_state,
                      const thermo::GasParameters& params, int samples = 101);

/// Entropy of an ideal-gas state given in any supported chart.
double entropy_at(const thermo::GasParameters& params, Chart chart, const Vec2& x);

} // namespace thermogeom::geodesics
