#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "proxsamp/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"proxsamp: zeroth-order convex-body and log-concave sampling"};

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    std::uint64_t replicas_override = 0;
    bool dry_run = false;

    app.add_option("--config", config_path, "experiment config file")->required();
    auto* seed_opt = app.add_option("--seed", seed_override, "override the config seed");
    app.add_option("--replicas", replicas_override, "override the replica count");
    app.add_option("--out", out_override, "override the CSV output path");
    app.add_flag("--dry-run", dry_run, "derive parameters only; no oracle calls");

    CLI11_PARSE(app, argc, argv);

    try {
        proxsamp::RunConfig cfg = proxsamp::load_run_config(config_path);
        if (*seed_opt) cfg.seed = seed_override;
        if (replicas_override) cfg.replicas = replicas_override;
        if (dry_run) cfg.dry_run = true;
        if (!out_override.empty()) cfg.out = out_override;

        proxsamp::RunResult result = proxsamp::run(cfg);
        std::cout << result.echo;
        if (!cfg.out.empty()) {
            std::ofstream out(cfg.out);
            if (!out) {
                std::cerr << "error: cannot write " << cfg.out << "\n";
                return 1;
            }
            out << result.csv;
        } else {
            std::cout << result.csv;
        }
        return result.exit_code;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
