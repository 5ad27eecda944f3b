#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cli.hpp"

namespace thermogeom::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys{
        {"gas", {"NkB", "cV", "S0", "U0", "V0"}},
        {"recipe", {"lambda", "k"}},
        {"output", {"dir", "format"}},
        {"curvature", {"metric", "grid", "spacing"}},
        {"geodesic",
         {"mode", "metric", "count", "speed", "tau_max", "initial", "velocity", "relaxation_times", "tolerance",
          "step"}},
        {"region", {"initial", "samples", "seed", "polyline_points"}},
        {"verify", {"grid", "spacing", "random_samples", "seed", "tau_max"}},
    };
    return keys;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& text)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& text)
{
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("expected an integer, got '" + text + "'");
    }
    return v;
}

bool parse_spacing(const std::string& text)
{
    if (text == "log") return true;
    if (text == "linear") return false;
    throw ConfigError("spacing must be linear or log, got '" + text + "'");
}

OutputFormat parse_format(const std::string& text)
{
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("format must be csv or json, got '" + text + "'");
}

std::vector<Vec2> parse_pair_list(const std::string& text)
{
    std::vector<Vec2> out;
    for (const std::string& item : split(text, ';')) {
        if (!item.empty()) out.push_back(parse_pair(item));
    }
    return out;
}

void require(bool ok, const std::string& message)
{
    if (!ok) throw ConfigError(message);
}

void validate_grid(const Grid& g, const std::string& where)
{
    for (const GridAxis* a : {&g.first, &g.second}) {
        require(a->n >= 1, where + ": grid sample counts must be at least 1");
        require(std::isfinite(a->lo) && std::isfinite(a->hi), where + ": grid bounds must be finite");
        require(a->lo <= a->hi, where + ": grid bounds must satisfy lo <= hi");
        if (g.log_spaced) require(a->lo > 0.0, where + ": log-spaced grids need positive bounds");
    }
}

} // namespace

double parse_number(const std::string& text)
{
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("expected a number, got '" + text + "'");
    }
    return v;
}

Vec2 parse_pair(const std::string& text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw ConfigError("expected a pair x,y, got '" + text + "'");
    return Vec2{parse_number(parts[0]), parse_number(parts[1])};
}

Grid parse_grid(const std::string& text, bool log_spaced)
{
    const auto axes = split(text, ',');
    if (axes.size() != 2) throw ConfigError("expected a grid a:b:n,a:b:n, got '" + text + "'");
    Grid g;
    g.log_spaced = log_spaced;
    for (int i = 0; i < 2; ++i) {
        const auto f = split(axes[static_cast<std::size_t>(i)], ':');
        if (f.size() != 3) throw ConfigError("expected a grid axis a:b:n, got '" + axes[static_cast<std::size_t>(i)] + "'");
        GridAxis a{parse_number(f[0]), parse_number(f[1]), parse_int(f[2])};
        (i == 0 ? g.first : g.second) = a;
    }
    return g;
}

std::vector<Vec2> Grid::points() const
{
    auto axis_values = [this](const GridAxis& a) {
        std::vector<double> v;
        for (int i = 0; i < a.n; ++i) {
            const double t = a.n == 1 ? 0.0 : static_cast<double>(i) / (a.n - 1);
            v.push_back(log_spaced ? a.lo * std::pow(a.hi / a.lo, t) : a.lo + t * (a.hi - a.lo));
        }
        return v;
    };
    std::vector<Vec2> out;
    for (double x : axis_values(first))
        for (double y : axis_values(second)) out.emplace_back(x, y);
    return out;
}

void RunConfig::validate() const
{
    try {
        gas.validate();
        recipe.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    validate_grid(curvature.grid, "curvature");
    validate_grid(verify.grid, "verify");

    static const std::set<std::string> metrics{"entropy", "energy", "massieu1", "massieu2", "massieu3",
                                               "log",     "plane",  "sphere"};
    require(metrics.count(curvature.metric) == 1, "curvature: unknown metric '" + curvature.metric + "'");

    require(geodesic.mode == "fan" || geodesic.mode == "relax" || geodesic.mode == "ivp",
            "geodesic: mode must be fan, relax or ivp");
    static const std::set<std::string> ivp_metrics{"entropy", "energy", "massieu1", "massieu2", "massieu3", "log"};
    require(ivp_metrics.count(geodesic.metric) == 1, "geodesic: unknown metric '" + geodesic.metric + "'");
    require(geodesic.count >= 1, "geodesic: count must be at least 1");
    require(geodesic.tau_max > 0.0 && std::isfinite(geodesic.tau_max), "geodesic: tau_max must be positive");
    require(geodesic.speed > 0.0 && std::isfinite(geodesic.speed), "geodesic: speed must be positive");
    require(geodesic.tolerance > 0.0, "geodesic: tolerance must be positive");
    require(geodesic.step >= 0.0, "geodesic: step must be non-negative");
    require(!geodesic.relaxation_times.empty(), "geodesic: relaxation_times needs at least one pair");
    for (const Vec2& t : geodesic.relaxation_times) {
        require(t[0] != 0.0 && t[1] != 0.0 && !std::isnan(t[0]) && !std::isnan(t[1]),
                "geodesic: relaxation times must be nonzero (inf marks a constant coordinate)");
    }

    require(region.samples >= 1, "region: samples must be at least 1");
    require(region.polyline_points >= 2, "region: polyline_points must be at least 2");
    require(std::isfinite(region.initial[0]) && std::isfinite(region.initial[1]), "region: initial must be finite");

    require(verify.random_samples >= 1, "verify: random_samples must be at least 1");
    require(verify.tau_max > 0.0 && std::isfinite(verify.tau_max), "verify: tau_max must be positive");
}

RunConfig load_config(const std::filesystem::path& path)
{
    if (!std::filesystem::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
    pt::ptree tree;
    try {
        pt::read_ini(path.string(), tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("cannot parse config: ") + e.what());
    }

    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) throw ConfigError("unknown config section [" + section + "]");
        for (const auto& [key, value] : body) {
            if (it->second.count(key) == 0) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
        }
    }
    auto get = [&tree](const std::string& key) -> std::optional<std::string> {
        if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(key, '/'))) return trim(*v);
        return std::nullopt;
    };

    RunConfig c;
    if (auto v = get("gas/NkB")) c.gas.NkB = parse_number(*v);
    if (auto v = get("gas/cV")) c.gas.cV = parse_number(*v);
    if (auto v = get("gas/S0")) c.gas.S0 = parse_number(*v);
    if (auto v = get("gas/U0")) c.gas.U0 = parse_number(*v);
    if (auto v = get("gas/V0")) c.gas.V0 = parse_number(*v);

    if (auto v = get("recipe/lambda")) c.recipe.lambda = parse_number(*v);
    if (auto v = get("recipe/k")) c.recipe.k = parse_int(*v);

    if (auto v = get("output/dir")) c.out_dir = *v;
    if (auto v = get("output/format")) c.format = parse_format(*v);

    if (auto v = get("curvature/metric")) c.curvature.metric = *v;
    {
        const bool log_spaced = get("curvature/spacing") ? parse_spacing(*get("curvature/spacing")) : false;
        c.curvature.grid.log_spaced = log_spaced;
        if (auto v = get("curvature/grid")) c.curvature.grid = parse_grid(*v, log_spaced);
    }

    if (auto v = get("geodesic/mode")) c.geodesic.mode = *v;
    if (auto v = get("geodesic/metric")) c.geodesic.metric = *v;
    if (auto v = get("geodesic/count")) c.geodesic.count = parse_int(*v);
    if (auto v = get("geodesic/speed")) c.geodesic.speed = parse_number(*v);
    if (auto v = get("geodesic/tau_max")) c.geodesic.tau_max = parse_number(*v);
    if (auto v = get("geodesic/initial")) c.geodesic.initial = parse_pair(*v);
    if (auto v = get("geodesic/velocity")) c.geodesic.velocity = parse_pair(*v);
    if (auto v = get("geodesic/relaxation_times")) c.geodesic.relaxation_times = parse_pair_list(*v);
    if (auto v = get("geodesic/tolerance")) c.geodesic.tolerance = parse_number(*v);
    if (auto v = get("geodesic/step")) c.geodesic.step = parse_number(*v);

    if (auto v = get("region/initial")) c.region.initial = parse_pair(*v);
    if (auto v = get("region/samples")) c.region.samples = parse_unsigned(*v);
    if (auto v = get("region/seed")) c.region.seed = parse_unsigned(*v);
    if (auto v = get("region/polyline_points")) c.region.polyline_points = parse_int(*v);

    {
        const bool log_spaced = get("verify/spacing") ? parse_spacing(*get("verify/spacing")) : true;
        c.verify.grid.log_spaced = log_spaced;
        if (auto v = get("verify/grid")) c.verify.grid = parse_grid(*v, log_spaced);
    }
    if (auto v = get("verify/random_samples")) c.verify.random_samples = parse_int(*v);
    if (auto v = get("verify/seed")) c.verify.seed = parse_unsigned(*v);
    if (auto v = get("verify/tau_max")) c.verify.tau_max = parse_number(*v);
    return c;
}

void apply_overrides(RunConfig& c, const Overrides& o)
{
    if (o.format) c.format = parse_format(*o.format);
    if (o.out_dir) c.out_dir = *o.out_dir;
    if (o.seed) {
        c.region.seed = *o.seed;
        c.verify.seed = *o.seed;
    }
    if (o.cv) c.gas.cV = *o.cv;
    if (o.initial) {
        const Vec2 x = parse_pair(*o.initial);
        c.geodesic.initial = x;
        c.region.initial = x;
    }
    if (o.tau_max) c.geodesic.tau_max = *o.tau_max;
    if (o.grid) c.curvature.grid = parse_grid(*o.grid, c.curvature.grid.log_spaced);
}

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace thermogeom::cli
