#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thermogeom/gtd.hpp"
#include "thermogeom/thermo.hpp"

namespace thermogeom::cli {

/// Exit codes.
inline constexpr int kSuccess = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kUsageError = 2;

/// Invalid configuration or flag value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct GridAxis {
    double lo;
    double hi;
    int n;
};

struct Grid {
    GridAxis first;
    GridAxis second;
    bool log_spaced = false;

    /// Row-major: the second coordinate varies fastest.
    std::vector<Vec2> points() const;
};

struct CurvatureBlock {
    /// entropy, energy, massieu1..3, log, plane or sphere.
    std::string metric = "entropy";
    Grid grid{{1.0, 10.0, 5}, {1.0, 10.0, 5}, false};
};

struct GeodesicBlock {
    /// fan (log chart), relax (U, V chart) or ivp.
    std::string mode = "fan";
    /// Metric of ivp mode: entropy, energy, massieu1..3 or log.
    std::string metric = "entropy";
    int count = 8;
    double speed = 1.0;
    double tau_max = 5.0;
    std::optional<Vec2> initial;
    Vec2 velocity{1.0, 1.0};
    /// (tau_U, tau_V) pairs for relax mode.
    std::vector<Vec2> relaxation_times{{1.0, 2.0}, {1.0, -1.5}};
    double tolerance = 1e-9;
    double step = 0.0;
};

struct RegionBlock {
    Vec2 initial{2.0, 3.0};
    std::uint64_t samples = 1000000;
    std::optional<std::uint64_t> seed;
    int polyline_points = 101;
};

struct VerifyBlock {
    Grid grid{{0.1, 10.0, 10}, {0.1, 10.0, 10}, true};
    int random_samples = 50;
    std::uint64_t seed = 20240607;
    double tau_max = 5.0;
};

struct RunConfig {
    thermo::GasParameters gas;
    gtd::MetricRecipe recipe;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path out_dir = ".";
    CurvatureBlock curvature;
    GeodesicBlock geodesic;
    RegionBlock region;
    VerifyBlock verify;

    /// Throws ConfigError.
    void validate() const;
};

/// Command-line overrides applied on top of the file.
struct Overrides {
    std::optional<std::string> format;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> cv;
    std::optional<std::string> initial;
    std::optional<double> tau_max;
    std::optional<std::string> grid;
};

/// Reads an INI file. Unknown sections or keys are rejected.
RunConfig load_config(const std::filesystem::path& path);
void apply_overrides(RunConfig& config, const Overrides& overrides);

Vec2 parse_pair(const std::string& text);
Grid parse_grid(const std::string& text, bool log_spaced);
double parse_number(const std::string& text);

int cmd_curvature(const RunConfig& config, std::ostream& log);
/// Curvature tables of the three Massieu metrics.
int cmd_massieu(const RunConfig& config, std::ostream& log);
int cmd_geodesic(const RunConfig& config, std::ostream& log);
int cmd_region(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log, bool legendre_only = false);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// "%.17g", with nan and +-inf spelled out.
std::string format_number(double x);

} // namespace thermogeom::cli
