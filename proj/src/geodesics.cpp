#include "thermogeom/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thermogeom/errors.hpp"
#include "thermogeom/integrator.hpp"

namespace thermogeom::geodesics {

namespace {

bool has_log_ratio(Chart chart) { return is_exponential_chart(chart) || chart == Chart::XiEtaLog; }

Vec2 log_coordinates(Chart chart, const Vec2& x)
{
    if (chart == Chart::XiEtaLog) return x;
    if (!(x[0] > 0.0) || !(x[1] > 0.0)) throw DomainError("conserved ratio needs positive coordinates");
    return Vec2{std::log(x[0]), std::log(x[1])};
}

double log_ratio_from_logs(const Vec2& taus, const Vec2& logs)
{
    const bool c1 = std::isinf(taus[0]);
    const bool c2 = std::isinf(taus[1]);
    if (c1 && c2) return logs[0];
    if (c1) return logs[0];
    if (c2) return logs[1];
    return taus[0] * logs[0] - taus[1] * logs[1];
}

double arc_length(const manifold::MetricField& metric, const std::vector<TraceSample>& samples)
{
    double length = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double a = std::sqrt(std::abs(manifold::squared_norm(metric, samples[i - 1].x, samples[i - 1].v)));
        const double b = std::sqrt(std::abs(manifold::squared_norm(metric, samples[i].x, samples[i].v)));
        length += 0.5 * (a + b) * (samples[i].tau - samples[i - 1].tau);
    }
    return length;
}

double ratio_drift(const GeodesicTrace& trace)
{
    if (!has_log_ratio(trace.chart) || trace.samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> r = conserved_ratio(trace);
    double drift = 0.0;
    for (double v : r) drift = std::max(drift, std::abs(v - r.front()));
    return drift;
}

} // namespace

GeodesicTrace integrate(const GeodesicIVP& ivp)
{
    if (!(ivp.tau_max > 0.0)) throw std::invalid_argument("tau_max must be positive");
    if (!ivp.metric.contains(ivp.start)) throw DomainError("geodesic start is outside the metric domain");

    const manifold::MetricField& metric = ivp.metric;
    if (ivp.velocity[0] == 0.0 && ivp.velocity[1] == 0.0) {
        // A constant curve; report the single state.
        GeodesicTrace trace;
        trace.chart = metric.chart();
        trace.samples.push_back({0.0, ivp.start, ivp.velocity});
        trace.conserved_ratio_drift = ratio_drift(trace);
        return trace;
    }
    const StepDoublingRk4::Rhs rhs = [&metric](const StepDoublingRk4::State& y) -> std::optional<StepDoublingRk4::State> {
        const Vec2 x{y[0], y[1]};
        const Vec2 v{y[2], y[3]};
        if (!metric.contains(x)) return std::nullopt;
        try {
            const Vec2 a = manifold::geodesic_rhs(metric, x, v);
            if (!std::isfinite(a[0]) || !std::isfinite(a[1])) return std::nullopt;
            return StepDoublingRk4::State{v[0], v[1], a[0], a[1]};
        } catch (const DomainError&) {
            return std::nullopt;
        } catch (const SingularMetricError&) {
            return std::nullopt;
        } catch (const SingularProductError&) {
            return std::nullopt;
        }
    };

    const double step = ivp.step > 0.0 ? ivp.step : ivp.tau_max / 1000.0;
    const StepDoublingRk4 rk(step, ivp.tolerance);
    const auto result = rk.integrate(
        rhs, StepDoublingRk4::State{ivp.start[0], ivp.start[1], ivp.velocity[0], ivp.velocity[1]}, ivp.tau_max);

    GeodesicTrace trace;
    trace.chart = metric.chart();
    trace.status = result.outcome == StepDoublingRk4::Outcome::Complete ? TraceStatus::Complete : TraceStatus::DomainExit;
    trace.samples.reserve(result.times.size());
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        const auto& s = result.states[i];
        trace.samples.push_back({result.times[i], Vec2{s[0], s[1]}, Vec2{s[2], s[3]}});
    }
    trace.arc_length = arc_length(metric, trace.samples);
    trace.conserved_ratio_drift = ratio_drift(trace);
    return trace;
}

AnalyticGeodesicIG::AnalyticGeodesicIG(const Vec2& start, const Vec2& taus) : start_(start), taus_(taus)
{
    if (!(start[0] > 0.0) || !(start[1] > 0.0)) throw DomainError("analytic geodesic needs a positive start");
    if (taus[0] == 0.0 || taus[1] == 0.0 || std::isnan(taus[0]) || std::isnan(taus[1])) {
        throw std::invalid_argument("relaxation times must be nonzero; use kConstantCoordinate for a constant");
    }
}

Vec2 AnalyticGeodesicIG::rates() const
{
    return Vec2{std::isinf(taus_[0]) ? 0.0 : 1.0 / taus_[0], std::isinf(taus_[1]) ? 0.0 : 1.0 / taus_[1]};
}

Vec2 AnalyticGeodesicIG::at(double tau) const
{
    const Vec2 r = rates();
    return Vec2{start_[0] * std::exp(tau * r[0]), start_[1] * std::exp(tau * r[1])};
}

Vec2 AnalyticGeodesicIG::velocity(double tau) const
{
    const Vec2 r = rates();
    const Vec2 z = at(tau);
    return Vec2{z[0] * r[0], z[1] * r[1]};
}

AnalyticGeodesicIG analytic_ideal_gas(const Vec2& start, const Vec2& taus) { return AnalyticGeodesicIG(start, taus); }

Vec2 relaxation_times_from_velocity(const Vec2& start, const Vec2& velocity)
{
    Vec2 taus;
    for (int i = 0; i < 2; ++i) taus[i] = velocity[i] == 0.0 ? kConstantCoordinate : start[i] / velocity[i];
    return taus;
}

double conserved_log_ratio(const Vec2& taus, const Vec2& x)
{
    return log_ratio_from_logs(taus, log_coordinates(Chart::UVEntropy, x));
}

std::vector<double> conserved_ratio(const AnalyticGeodesicIG& g, std::span<const double> taus)
{
    std::vector<double> out;
    out.reserve(taus.size());
    for (double t : taus) out.push_back(conserved_log_ratio(g.taus(), g.at(t)));
    return out;
}

Vec2 fit_relaxation_times(const GeodesicTrace& trace)
{
    if (trace.samples.size() < 2) return Vec2{kConstantCoordinate, kConstantCoordinate};
    const TraceSample& a = trace.samples.front();
    const TraceSample& b = trace.samples.back();
    const Vec2 la = log_coordinates(trace.chart, a.x);
    const Vec2 lb = log_coordinates(trace.chart, b.x);
    const double dt = b.tau - a.tau;
    Vec2 taus;
    for (int i = 0; i < 2; ++i) {
        const double rate = (lb[i] - la[i]) / dt;
        taus[i] = std::abs(rate) <= 1e-12 * std::max(1.0, std::abs(la[i])) ? kConstantCoordinate : 1.0 / rate;
    }
    return taus;
}

std::vector<double> conserved_ratio(const GeodesicTrace& trace)
{
    if (!has_log_ratio(trace.chart)) {
        throw std::invalid_argument("conserved ratio is defined on exponential and log charts only");
    }
    const Vec2 taus = fit_relaxation_times(trace);
    std::vector<double> out;
    out.reserve(trace.samples.size());
    for (const TraceSample& s : trace.samples) out.push_back(log_ratio_from_logs(taus, log_coordinates(trace.chart, s.x)));
    return out;
}

double entropy_at(const thermo::GasParameters& params, Chart chart, const Vec2& x)
{
    if (chart == Chart::XiEtaLog) return thermo::entropy_from_log(params, x);
    if (chart == Chart::SVEnergy) return x[0];
    return thermo::ideal_gas_entropy(params).value(thermo::uv_from_chart(params, chart, x));
}

GeodesicTrace connect(const manifold::MetricField& metric, const Vec2& initial, const Vec2& final_state,
                      const thermo::GasParameters& params, int samples)
{
    const Chart chart = metric.chart();
    if (chart != Chart::XiEtaLog && chart != Chart::UVEntropy) {
        throw std::invalid_argument("connect() supports the log and (U, V) charts");
    }
    if (samples < 2) throw std::invalid_argument("connect() needs at least two samples");
    if (!metric.contains(initial) || !metric.contains(final_state)) {
        throw DomainError("connect() endpoint outside the metric domain");
    }

    const bool log_chart = chart == Chart::XiEtaLog;
    Vec2 a = log_chart ? initial : thermo::log_from_uv(params, initial);
    Vec2 b = log_chart ? final_state : thermo::log_from_uv(params, final_state);

    const thermo::GasParameters& p = params;
    if (thermo::check_third_law_point(p, a) == thermo::ThirdLaw::Excluded ||
        thermo::check_third_law_point(p, b) == thermo::ThirdLaw::Excluded) {
        throw ThirdLawError("the minimum-entropy state is excluded from the equilibrium space");
    }
    // The segment a + t (b - a) meets the origin iff a and b are antiparallel.
    const Vec2 d = b - a;
    const double cross = a[0] * d[1] - a[1] * d[0];
    if (d.squaredNorm() > 0.0 && cross == 0.0) {
        const double t = -a.dot(d) / d.squaredNorm();
        if (t > 0.0 && t < 1.0) throw ThirdLawError("geodesic segment crosses the minimum-entropy state");
    }

    GeodesicTrace trace;
    trace.chart = chart;
    if (thermo::entropy_from_log(p, b) < thermo::entropy_from_log(p, a)) {
        std::swap(a, b);
        trace.reversed = true;
    }
    const Vec2 delta = b - a;
    trace.samples.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double tau = static_cast<double>(i) / (samples - 1);
        const Vec2 y = a + tau * delta;
        if (log_chart) {
            trace.samples.push_back({tau, y, delta});
        } else {
            const Vec2 uv = thermo::uv_from_log(p, y);
            trace.samples.push_back({tau, uv, Vec2{uv[0] * delta[0], uv[1] * delta[1]}});
        }
    }
    // Pin the endpoints to the inputs exactly.
    trace.samples.front().x = trace.reversed ? final_state : initial;
    trace.samples.back().x = trace.reversed ? initial : final_state;
    trace.arc_length = arc_length(metric, trace.samples);
    trace.conserved_ratio_drift = ratio_drift(trace);
    return trace;
}

} // namespace thermogeom::geodesics
