#include "vorwave/config.hpp"
#include "vorwave/driver.hpp"
#include "vorwave/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"vorwave: steady periodic water waves with vorticity - solver and verifier"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--set", overrides, "override a config key, e.g. --set g=9.81")
        ->take_all();
    app.add_option("--out", out_dir, "output directory (overrides config)");

    const char* names[] = {"laminar", "bifurcate", "solve", "trace", "verify", "plot", "sweep"};
    const char* descs[] = {
        "trivial-flow profile and dispersion scan",
        "locate the bifurcation point of the 2*pi-periodic mode",
        "continue the wave branch in amplitude and export solutions",
        "integrate particle trajectories and export streamlines/drift",
        "run the full verification suite (exit 4 on failure)",
        "emit SVG figures (streamline fan, drift profile and orbits)",
        "solve + verify over a list of vorticity functions",
    };
    for (size_t k = 0; k < 7; ++k) app.add_subcommand(names[k], descs[k])->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::string command = app.get_subcommands().front()->get_name();
    try {
        vorwave::RunConfig cfg = vorwave::parse_config(config_path, overrides);
        if (!out_dir.empty()) cfg.out = out_dir;
        return vorwave::run_command(command, cfg);
    } catch (const vorwave::ConfigError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "config"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 2;
    } catch (const vorwave::SolverError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "solver"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 3;
    } catch (const vorwave::DomainError& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "domain"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump()
                  << std::endl;
        return 1;
    }
}
