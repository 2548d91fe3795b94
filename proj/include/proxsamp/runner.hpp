#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "proxsamp/annealing.hpp"
#include "proxsamp/config.hpp"
#include "proxsamp/oracles.hpp"
#include "proxsamp/samplers.hpp"

namespace proxsamp {

/// A fully parsed experiment description.  Loading consumes every key it
/// understands and rejects configs with leftovers, so typos never pass
/// silently.
struct RunConfig {
    std::string command;
    std::unique_ptr<StandardBody> body;
    std::unique_ptr<PotentialOracle> potential;
    double q = 2.0;
    double q0 = 2.0;
    double eps = 0.5;
    double warmness = 1.0;
    double r = 0.0;       // <= 0: derive from body_stats when possible
    double lambda = 0.0;  // <= 0: derive from body_stats when possible
    Constants constants;
    std::uint64_t seed = 0;
    std::uint64_t replicas = 1;
    std::uint64_t iterations_override = 0;  // 0: use the derived N
    std::string out;
    bool dry_run = false;
    std::string diagnose_suite = "all";
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& text);

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 config/oracle error, 2 failed checks
    std::string csv;
    std::string echo;  // human-readable parameter tables
    QueryLedger total_ledger;  // merged over replicas; all zero on dry runs
};

/// Executes the configured command; replicas fan out over a worker pool
/// (PROXSAMP_WORKERS caps the threads) and land in replica order, so the CSV
/// payload is a pure function of the config.
RunResult run(RunConfig& cfg);

/// Prints derived parameters (step size, threshold, iteration count,
/// schedules, predicted query totals) without touching any oracle.
void echo_derived_params(const RunConfig& cfg, std::ostream& os);

/// Payload used by the determinism contract: identical configs must agree on
/// this string byte for byte.  Strips the wall-clock column, which is the
/// only nondeterministic field.
std::string csv_determinism_payload(const std::string& csv);

}  // namespace proxsamp
