#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "nncross/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Neumann-Neumann domain decomposition on the square with one interior cross-point"};

    std::string method = "new";
    std::string example = "1";
    nncross::RunConfig config;

    app.add_option("--method", method, "Iteration scheme: standard, mixed or new")
        ->check(CLI::IsMember({"standard", "mixed", "new"}));
    app.add_option("--example", example, "Benchmark data: 1, 2 or custom")
        ->check(CLI::IsMember({"1", "2", "custom"}));
    app.add_option("--theta", config.theta, "Relaxation parameter");
    app.add_option("--n", config.n, "Nodes-per-axis parameter; meshsize is 1/n");
    app.add_option("--max-iter", config.max_iter, "Iteration cap");
    app.add_option("--tol", config.tol, "Relative L2 stopping tolerance");
    app.add_option("--out", config.output_dir, "Output directory for history.csv");
    app.add_flag("--emit-fields", config.emit_fields,
                 "Also write solution/error/psi snapshots as CSV");
    app.add_option("--f-file", config.f_file, "Source term CSV for --example custom");
    app.add_option("--g-file", config.g_file,
                   "Boundary data CSV for --example custom (default: zero)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nncross::kExitUsage;
    }

    nncross::parse_method(method, config.method);
    config.example = example == "custom" ? 0 : std::stoi(example);

    return nncross::run_experiment(config);
}
