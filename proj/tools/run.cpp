#include <ostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "thermogeom/errors.hpp"

namespace thermogeom::cli {

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Geometrothermodynamics of the ideal gas: curvature, geodesics, regions and checks"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    Overrides o;
    app.add_option("--config", config_path, "INI configuration file");
    app.add_option("--format", o.format, "csv or json");
    app.add_option("--out", o.out_dir, "output directory");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--cv", o.cv, "heat capacity cV");
    app.add_option("--initial", o.initial, "initial state x,y");
    app.add_option("--tau-max", o.tau_max, "affine parameter span");
    app.add_option("--grid", o.grid, "curvature grid a:b:n,a:b:n");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"curvature", "curvature table of an induced metric over a grid"},
        {"massieu", "curvature tables of the three Massieu metrics"},
        {"geodesic", "geodesic traces and a JSON summary"},
        {"region", "connectivity region report and adiabat polyline"},
        {"verify", "run the invariance, flatness and law checks"},
        {"legendre-check", "run the Legendre invariance checks only"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kUsageError;
    }

    try {
        RunConfig config = config_path ? load_config(*config_path) : RunConfig{};
        apply_overrides(config, o);
        config.validate();
        const std::string command = app.get_subcommands().front()->get_name();
        if (command == "curvature") return cmd_curvature(config, out);
        if (command == "massieu") return cmd_massieu(config, out);
        if (command == "geodesic") return cmd_geodesic(config, out);
        if (command == "region") return cmd_region(config, out);
        if (command == "verify") return cmd_verify(config, out);
        return cmd_verify(config, out, true);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailure;
    }
}

} // namespace thermogeom::cli
