#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "thermogeom/errors.hpp"
#include "thermogeom/geodesics.hpp"
#include "thermogeom/manifold.hpp"

namespace thermogeom::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void ensure_dir(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    return f;
}

void write_csv(const std::filesystem::path& path, const Table& t)
{
    auto f = open_output(path);
    for (std::size_t i = 0; i < t.columns.size(); ++i) f << (i ? "," : "") << t.columns[i];
    f << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << format_number(row[i]);
        f << '\n';
    }
}

Json table_json(const Table& t)
{
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (double x : row) r.push_back(number(x));
        rows.push_back(std::move(r));
    }
    return Json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

void write_json(const std::filesystem::path& path, const Json& j)
{
    auto f = open_output(path);
    f << j.dump(2) << '\n';
}

/// Writes `stem`.csv or `stem`.json and returns the file name.
std::string write_table(const RunConfig& config, const std::string& stem, const Table& t, const Json& extra = {})
{
    ensure_dir(config.out_dir);
    if (config.format == OutputFormat::Csv) {
        write_csv(config.out_dir / (stem + ".csv"), t);
        return stem + ".csv";
    }
    Json j = extra.is_object() ? extra : Json::object();
    j.update(table_json(t));
    write_json(config.out_dir / (stem + ".json"), j);
    return stem + ".json";
}

manifold::MetricField metric_by_name(const RunConfig& config, const std::string& name)
{
    if (name == "log") return manifold::log_chart_metric();
    if (name == "plane") return manifold::euclidean_metric();
    if (name == "sphere") return manifold::unit_sphere_metric();
    const auto rep = thermo::parse_representation(name);
    if (!rep) throw ConfigError("unknown metric '" + name + "'");
    switch (*rep) {
    case thermo::Representation::Entropy: return gtd::induce_metric(thermo::ideal_gas_entropy(config.gas), config.recipe).field;
    case thermo::Representation::Energy: return gtd::induce_metric(thermo::ideal_gas_energy(config.gas), config.recipe).field;
    case thermo::Representation::Massieu1:
    case thermo::Representation::Massieu2:
    case thermo::Representation::Massieu3: {
        const int which = static_cast<int>(*rep) - static_cast<int>(thermo::Representation::Massieu1) + 1;
        const auto gas = config.gas.with_consistent_massieu_constants();
        return gtd::induce_metric(thermo::massieu_function(gas, which), config.recipe).field;
    }
    }
    throw ConfigError("unknown metric '" + name + "'");
}

int curvature_table(const RunConfig& config, const std::string& metric_name, const std::string& stem, std::ostream& log)
{
    const manifold::MetricField metric = metric_by_name(config, metric_name);
    Table t{{"x1", "x2", "R_1212", "Ricci_11", "Ricci_12", "Ricci_22", "R_scalar"}, {}};
    std::size_t skipped = 0;
    for (const Vec2& x : config.curvature.grid.points()) {
        try {
            const auto r = manifold::curvature(metric, x);
            const double r1212 = manifold::lowered_riemann(metric, r, x, 0, 1, 0, 1);
            t.rows.push_back({x[0], x[1], r1212, r.ricci(0, 0), r.ricci(0, 1), r.ricci(1, 1), r.scalar});
        } catch (const Error&) {
            ++skipped;
        }
    }
    if (skipped > 0) log << "warning: skipped " << skipped << " grid points on or outside the chart boundary\n";
    const Json extra{{"metric", metric_name}, {"chart", std::string(chart_name(metric.chart()))}, {"skipped", skipped}};
    const std::string file = write_table(config, stem, t, extra);
    log << "wrote " << (config.out_dir / file).string() << " (" << t.rows.size() << " rows)\n";
    return kSuccess;
}

std::string trace_file_stem(std::size_t index)
{
    std::ostringstream s;
    s << "geodesic_" << std::setw(3) << std::setfill('0') << index;
    return s.str();
}

Vec2 to_log(const thermo::GasParameters& gas, Chart chart, const Vec2& x)
{
    if (chart == Chart::XiEtaLog) return x;
    return thermo::log_from_uv(gas, thermo::uv_from_chart(gas, chart, x));
}

struct TraceJob {
    manifold::MetricField metric;
    Vec2 start;
    Vec2 velocity;
};

Json emit_trace(const RunConfig& config, std::size_t index, const TraceJob& job)
{
    geodesics::GeodesicIVP ivp{job.metric, job.start, job.velocity, config.geodesic.tau_max, config.geodesic.step,
                               config.geodesic.tolerance};
    const geodesics::GeodesicTrace trace = geodesics::integrate(ivp);
    const Chart chart = trace.chart;
    const bool has_ratio = std::isfinite(trace.conserved_ratio_drift);
    const std::vector<double> ratio = has_ratio ? geodesics::conserved_ratio(trace) : std::vector<double>{};

    Table t{{"tau", "x1", "x2", "v1", "v2", "S", "conserved_log_ratio"}, {}};
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const auto& s = trace.samples[i];
        const double S = geodesics::entropy_at(config.gas, chart, s.x);
        t.rows.push_back({s.tau, s.x[0], s.x[1], s.v[0], s.v[1], S, has_ratio ? ratio[i] : std::nan("")});
    }
    const std::string file = write_table(config, trace_file_stem(index), t);

    Json summary{{"index", index},
                 {"file", file},
                 {"chart", std::string(chart_name(chart))},
                 {"status", trace.status == geodesics::TraceStatus::Complete ? "complete" : "domain_exit"},
                 {"flagged", trace.status != geodesics::TraceStatus::Complete},
                 {"samples", trace.samples.size()},
                 {"tau_end", trace.samples.back().tau},
                 {"start", {job.start[0], job.start[1]}},
                 {"velocity", {job.velocity[0], job.velocity[1]}},
                 {"end", {trace.samples.back().x[0], trace.samples.back().x[1]}},
                 {"arc_length", trace.arc_length},
                 {"conserved_ratio_drift", number(trace.conserved_ratio_drift)}};
    if (has_ratio) {
        const Vec2 taus = geodesics::fit_relaxation_times(trace);
        summary["relaxation_times"] = {number(taus[0]), number(taus[1])};
    }
    const Vec2 a = to_log(config.gas, chart, trace.samples.front().x);
    const Vec2 b = to_log(config.gas, chart, trace.samples.back().x);
    try {
        const auto c = geodesics::classify(a, b, config.gas.cV, config.gas.NkB);
        summary["delta_S"] = c.delta_S;
        summary["verdict"] = std::string(geodesics::verdict_name(c.verdict));
    } catch (const ThirdLawError&) {
        summary["delta_S"] = geodesics::entropy_at(config.gas, chart, trace.samples.back().x) -
                             geodesics::entropy_at(config.gas, chart, trace.samples.front().x);
        summary["verdict"] = nullptr;
        summary["note"] = "endpoint excluded by the third law";
    }
    return summary;
}

} // namespace

int cmd_curvature(const RunConfig& config, std::ostream& log)
{
    return curvature_table(config, config.curvature.metric, "curvature", log);
}

int cmd_massieu(const RunConfig& config, std::ostream& log)
{
    for (const char* name : {"massieu1", "massieu2", "massieu3"}) {
        curvature_table(config, name, std::string("curvature_") + name, log);
    }
    return kSuccess;
}

int cmd_geodesic(const RunConfig& config, std::ostream& log)
{
    const GeodesicBlock& g = config.geodesic;
    std::vector<TraceJob> jobs;
    if (g.mode == "fan") {
        const Vec2 start = g.initial.value_or(Vec2{0.0, 0.0});
        for (int i = 0; i < g.count; ++i) {
            const double angle = 2.0 * std::numbers::pi * i / g.count;
            jobs.push_back({manifold::log_chart_metric(), start, g.speed * Vec2{std::cos(angle), std::sin(angle)}});
        }
    } else if (g.mode == "relax") {
        const Vec2 start = g.initial.value_or(Vec2{1.0, 1.0});
        const auto metric = metric_by_name(config, "entropy");
        if (!metric.contains(start)) throw ConfigError("geodesic: relax mode needs a positive (U, V) initial state");
        for (const Vec2& taus : g.relaxation_times) {
            Vec2 v;
            for (int i = 0; i < 2; ++i) v[i] = std::isinf(taus[i]) ? 0.0 : start[i] / taus[i];
            jobs.push_back({metric, start, v});
        }
    } else {
        const auto metric = metric_by_name(config, g.metric);
        const Vec2 start = g.initial.value_or(Vec2{1.0, 1.0});
        if (!metric.contains(start)) throw ConfigError("geodesic: initial state outside the chart of " + g.metric);
        jobs.push_back({metric, start, g.velocity});
    }

    Json traces = Json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) traces.push_back(emit_trace(config, i, jobs[i]));
    std::size_t flagged = 0;
    for (const auto& t : traces) flagged += t["flagged"].get<bool>() ? 1 : 0;
    const Json summary{{"mode", g.mode}, {"tau_max", g.tau_max}, {"count", jobs.size()}, {"flagged", flagged},
                       {"traces", std::move(traces)}};
    write_json(config.out_dir / "geodesic_summary.json", summary);
    if (flagged > 0) log << "warning: " << flagged << " traces left the domain early\n";
    log << "wrote " << jobs.size() << " traces and " << (config.out_dir / "geodesic_summary.json").string() << '\n';
    return kSuccess;
}

int cmd_region(const RunConfig& config, std::ostream& log)
{
    const RegionBlock& r = config.region;
    if (!r.seed) throw ConfigError("region: a seed is required (config [region] seed or --seed)");
    geodesics::RegionGeometry geo;
    try {
        geo = geodesics::region_geometry(r.initial, config.gas.cV);
    } catch (const Error& e) {
        throw ConfigError(std::string("region: ") + e.what());
    }

    Json report{{"initial", {r.initial[0], r.initial[1]}},
                {"cV", config.gas.cV},
                {"tan_alpha", geo.tan_alpha},
                {"tan_alpha_prime", geo.tan_alpha_prime},
                {"alpha_deg", geo.alpha_deg()},
                {"alpha_prime_deg", geo.alpha_prime_deg()},
                {"intercepts",
                 {{"xi_axis", {geo.xi_axis_point[0], geo.xi_axis_point[1]}},
                  {"eta_axis", {geo.eta_axis_point[0], geo.eta_axis_point[1]}}}},
                {"area_nc", geo.area_nc}};
    try {
        const auto mc = geodesics::monte_carlo_nc_area(r.initial, config.gas.cV, r.samples, *r.seed);
        report["monte_carlo_area"] = mc.estimate;
        report["mc_rel_err"] = std::abs(mc.estimate - geo.area_nc) / geo.area_nc;
        report["mc_samples"] = mc.samples;
        report["mc_seed"] = *r.seed;
    } catch (const DomainError& e) {
        report["monte_carlo_area"] = nullptr;
        report["mc_rel_err"] = nullptr;
        report["note"] = e.what();
    }

    Table line{{"xi", "eta"}, {}};
    for (int i = 0; i < r.polyline_points; ++i) {
        const double t = static_cast<double>(i) / (r.polyline_points - 1);
        const Vec2 p = (1.0 - t) * geo.eta_axis_point + t * geo.xi_axis_point;
        line.rows.push_back({p[0], p[1]});
    }
    ensure_dir(config.out_dir);
    write_csv(config.out_dir / "adiabat.csv", line);
    write_json(config.out_dir / "region.json", report);
    log << "wrote " << (config.out_dir / "region.json").string() << " and " << (config.out_dir / "adiabat.csv").string()
        << '\n';
    return kSuccess;
}

} // namespace thermogeom::cli
