#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "predprey/cli_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Steady states, threshold curves, and bifurcation diagrams of a "
                 "diffusive predator-prey model with saturating functional response"};

    std::string config_path, out_dir, command;
    unsigned jobs = 1;
    app.add_option("--config", config_path, "Path to a JSON config file")->required();
    app.add_option("--command", command,
                   "One of eigen|theta|curves|wedge|tangent|branch|scalar-branch|oracle|compare")
        ->required();
    app.add_option("--out", out_dir, "Output directory (overrides config 'output')");
    app.add_option("--jobs", jobs, "Worker threads for grid scans")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        predprey::RunConfig cfg = predprey::load_config(config_path);
        predprey::run_command(command, cfg, out_dir, jobs);
    } catch (const predprey::ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const predprey::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
