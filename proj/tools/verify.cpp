#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>

#include <json.hpp>

#include "cli.hpp"
#include "thermogeom/errors.hpp"
#include "thermogeom/geodesics.hpp"
#include "thermogeom/manifold.hpp"

namespace thermogeom::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Check {
    std::string name;
    double residual;
    double tolerance;
    bool pass;
    std::string detail;
};

Check bound(std::string name, double residual, double tolerance, std::string detail = {})
{
    return {std::move(name), residual, tolerance, residual < tolerance, std::move(detail)};
}

Check predicate(std::string name, bool pass, std::string detail = {})
{
    return {std::move(name), pass ? 0.0 : 1.0, 0.5, pass, std::move(detail)};
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11U) * 0x1.0p-53);
}

struct Representations {
    std::vector<std::pair<std::string, thermo::FundamentalEquation>> items;
};

Representations representations(const RunConfig& config)
{
    const auto gas = config.gas.with_consistent_massieu_constants();
    Representations r;
    r.items.emplace_back("entropy", thermo::ideal_gas_entropy(config.gas));
    r.items.emplace_back("energy", thermo::ideal_gas_energy(config.gas));
    for (int i = 1; i <= 3; ++i) r.items.emplace_back("massieu" + std::to_string(i), thermo::massieu_function(gas, i));
    return r;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

/// Largest |g - diag(1/x1^2, 1/x2^2)| relative to the entries.
double flat_log_metric_gap(const manifold::MetricField& g, const std::vector<Vec2>& grid)
{
    double worst = 0.0;
    for (const Vec2& x : grid) {
        const Mat2 m = g.at(x);
        worst = std::max({worst, relative_gap(m(0, 0), 1.0 / (x[0] * x[0])), relative_gap(m(1, 1), 1.0 / (x[1] * x[1])),
                          std::abs(m(0, 1))});
    }
    return worst;
}

std::vector<Check> legendre_checks(const RunConfig& config)
{
    std::mt19937_64 rng(config.verify.seed);
    std::vector<gtd::Vec5> samples;
    for (int i = 0; i < config.verify.random_samples; ++i) {
        gtd::Vec5 x;
        for (int j = 0; j < 5; ++j) x[j] = (rng() & 1U ? 1.0 : -1.0) * uniform(rng, 0.5, 3.0);
        samples.push_back(x);
    }
    std::vector<Check> out;
    for (const auto& [rep, name] : {std::pair{gtd::PhaseRep::Energy, "energy"}, std::pair{gtd::PhaseRep::Entropy, "entropy"}}) {
        const auto r = gtd::legendre_pushforward_check(rep, -1, config.recipe, samples);
        out.push_back(bound(std::string("legendre_metric_") + name, r.metric, 1e-9));
        out.push_back(bound(std::string("legendre_gibbs_") + name, r.gibbs, 1e-9));
    }
    return out;
}

template <class F>
bool throws_third_law(F&& f)
{
    try {
        f();
    } catch (const ThirdLawError&) {
        return true;
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

std::vector<Check> full_checks(const RunConfig& config)
{
    std::vector<Check> out;
    const auto grid = config.verify.grid.points();
    const auto reps = representations(config);

    {
        const auto g = gtd::induce_metric(thermo::ideal_gas_entropy(config.gas), config.recipe).field;
        double worst = 0.0;
        for (const Vec2& x : grid) {
            const Mat2 closed = gtd::ideal_gas_entropy_metric_closed_form(config.gas, gtd::MetricRecipe::canonical(), x);
            worst = std::max(worst, ((g.at(x) - closed).cwiseAbs().array() / closed.cwiseAbs().maxCoeff()).maxCoeff());
        }
        out.push_back(bound("entropy_metric_closed_form", worst, 1e-10, "dU^2/U^2 + dV^2/V^2"));
    }
    for (std::size_t i = 2; i < reps.items.size(); ++i) {
        const auto g = gtd::induce_metric(reps.items[i].second, config.recipe).field;
        out.push_back(bound(reps.items[i].first + "_metric_closed_form", flat_log_metric_gap(g, grid), 1e-10));
    }

    for (const auto& [name, fe] : reps.items) {
        const auto g = gtd::induce_metric(fe, config.recipe).field;
        double worst = 0.0;
        for (const Vec2& x : grid) worst = std::max(worst, manifold::curvature(g, x).max_abs_riemann());
        out.push_back(bound("flatness_" + name, worst, 1e-8));
    }

    {
        const auto g = gtd::induce_metric(thermo::ideal_gas_entropy(config.gas), config.recipe).field;
        double diag = 0.0;
        double rest = 0.0;
        for (const Vec2& x : grid) {
            const auto gam = manifold::christoffel(g, x);
            diag = std::max({diag, std::abs(gam(0, 0, 0) + 1.0 / x[0]), std::abs(gam(1, 1, 1) + 1.0 / x[1])});
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        if (!(a == b && b == c)) rest = std::max(rest, std::abs(gam(a, b, c)));
        }
        out.push_back(bound("christoffel_closed_form", diag, 1e-9, "Gamma^U_UU = -1/U, Gamma^V_VV = -1/V"));
        out.push_back(bound("christoffel_off_components", rest, 1e-10));
    }

    auto legendre = legendre_checks(config);
    out.insert(out.end(), legendre.begin(), legendre.end());

    for (const auto& [name, fe] : reps.items) {
        std::vector<Vec2> inside;
        for (const Vec2& x : grid)
            if (fe.contains(x)) inside.push_back(x);
        out.push_back(bound("first_law_" + name, gtd::check_first_law(fe, inside), 1e-12));
    }

    for (const auto& [name, fe] : reps.items) {
        const auto report = thermo::check_second_law(fe, grid);
        out.push_back(predicate("second_law_" + name, report.all_pass(),
                                std::to_string(report.failures) + " of " + std::to_string(report.entries.size()) +
                                    " points violate stability"));
    }
    {
        const thermo::FundamentalEquation convex(
            thermo::Representation::Entropy,
            [](const Vec2& x) {
                thermo::Jet j;
                j.value = x[0] * x[0] + x[1] * x[1];
                j.d1 = 2.0 * x;
                j.d2 = 2.0 * Mat2::Identity();
                return j;
            },
            {}, config.gas);
        const auto report = thermo::check_second_law(convex, grid);
        out.push_back(predicate("second_law_convex_rejected", report.failures == report.entries.size()));
    }

    {
        const Vec2 origin{0.0, 0.0};
        const Vec2 other{1.0, 1.0};
        const double cV = config.gas.cV;
        const bool ok = throws_third_law([&] { geodesics::classify(origin, other, cV); }) &&
                        throws_third_law([&] { geodesics::classify(other, origin, cV); }) &&
                        throws_third_law([&] { geodesics::region_geometry(origin, cV); }) &&
                        throws_third_law([&] { geodesics::adiabat_line(origin, cV); }) &&
                        throws_third_law([&] { geodesics::connect(manifold::log_chart_metric(), origin, other, config.gas); }) &&
                        throws_third_law([&] { geodesics::connect(manifold::log_chart_metric(), Vec2{-1.0, -1.0}, other, config.gas); });
        out.push_back(predicate("third_law_origin_rejected", ok));
    }

    {
        const auto g = gtd::induce_metric(thermo::ideal_gas_entropy(config.gas), config.recipe).field;
        std::mt19937_64 rng(config.verify.seed + 1);
        double oracle = 0.0;
        double drift = 0.0;
        for (int i = 0; i < config.verify.random_samples; ++i) {
            const Vec2 start{uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
            Vec2 taus;
            for (int j = 0; j < 2; ++j) taus[j] = (rng() & 1U ? 1.0 : -1.0) * uniform(rng, 1.0, 10.0);
            const auto exact = geodesics::analytic_ideal_gas(start, taus);
            const auto trace = geodesics::integrate({g, start, exact.velocity(0.0), config.verify.tau_max});
            for (const auto& s : trace.samples) {
                const Vec2 z = exact.at(s.tau);
                oracle = std::max({oracle, std::abs(s.x[0] / z[0] - 1.0), std::abs(s.x[1] / z[1] - 1.0)});
            }
            if (trace.status != geodesics::TraceStatus::Complete) oracle = std::numeric_limits<double>::infinity();
            const auto ratio = geodesics::conserved_ratio(trace);
            const double r0 = geodesics::conserved_log_ratio(taus, start);
            for (double r : ratio) drift = std::max(drift, std::abs(r - r0));
        }
        out.push_back(bound("geodesic_exponential_oracle", oracle, 1e-6));
        out.push_back(bound("geodesic_conserved_ratio", drift, 1e-6));
    }

    {
        const double cV = config.gas.cV;
        std::size_t mismatches = 0;
        for (int i = 0; i <= 100; ++i) {
            for (int j = 0; j <= 100; ++j) {
                const Vec2 d{-5.0 + 0.1 * i, -5.0 + 0.1 * j};
                const Vec2 initial{0.05, 0.05};
                const double s = cV * d[0] + d[1];
                const auto v = geodesics::classify(initial, initial + d, cV).verdict;
                const auto expected = std::abs(s) <= 1e-12 * (std::abs(cV * d[0]) + std::abs(d[1]) + 1.0)
                                          ? geodesics::Verdict::Adiabatic
                                          : (s > 0 ? geodesics::Verdict::Allowed : geodesics::Verdict::Forbidden);
                if (v != expected) ++mismatches;
            }
        }
        out.push_back(predicate("second_law_classifier", mismatches == 0, std::to_string(mismatches) + " mismatches"));
    }

    {
        const auto geo = geodesics::region_geometry(Vec2{2.0, 3.0}, 1.5);
        const double r = std::max({std::abs(geo.area_nc - 12.0), std::abs(geo.xi_axis_point[0] - 4.0),
                                   std::abs(geo.eta_axis_point[1] - 6.0), std::abs(geo.tan_alpha * geo.tan_alpha_prime - 1.0)});
        out.push_back(bound("region_geometry", r, 1e-12, "initial (2, 3), cV = 3/2"));
    }

    {
        const double cV = config.gas.cV;
        const auto d = geodesics::process_identify(Vec2{-cV, 1.0}, cV);
        const bool adiabatic = d.kind == geodesics::ProcessKind::Adiabatic;
        const double gap = std::abs(d.polytropic_index - (cV + 1.0) / cV);
        out.push_back(bound("adiabatic_polytropic_index", adiabatic ? gap : 1.0, 1e-12, "n = (cV + 1) / cV"));
    }
    return out;
}

} // namespace

int cmd_verify(const RunConfig& config, std::ostream& log, bool legendre_only)
{
    const std::vector<Check> checks = legendre_only ? legendre_checks(config) : full_checks(config);
    Json list = Json::array();
    bool all = true;
    for (const Check& c : checks) {
        all = all && c.pass;
        Json j{{"name", c.name},
               {"pass", c.pass},
               {"max_residual", std::isfinite(c.residual) ? Json(c.residual) : Json(nullptr)},
               {"tolerance", c.tolerance}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        list.push_back(std::move(j));
        log << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << format_number(c.residual) << '\n';
    }
    const Json report{{"passed", all},
                      {"recipe", {{"lambda", config.recipe.lambda}, {"k", config.recipe.k}}},
                      {"checks", std::move(list)}};
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    std::ofstream f(config.out_dir / (legendre_only ? "legendre_check.json" : "verify.json"), std::ios::binary);
    if (!f) throw ConfigError("cannot write verification report to " + config.out_dir.string());
    f << report.dump(2) << '\n';
    return all ? kSuccess : kCheckFailure;
}

} // namespace thermogeom::cli
