/**
 * Experiment harness behind the CLI: one subcommand per game, seeded runs,
 * deterministic CSV artifacts.
 *
 * Every CSV starts with a '#' metadata line recording the artifact version
 * and all output-affecting parameters, followed by a fixed header. Reals
 * are printed with 17 significant digits and '\n' line endings, so a given
 * configuration always produces byte-identical output. Monte Carlo trials
 * draw from per-trial sub-streams RngStream(seed, row<<32 | trial), which
 * makes aggregates independent of the worker count.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qglab::cli {

inline constexpr const char* kArtifactVersion = "qglab 0.1.0";

struct ExperimentConfig {
    std::string subcommand;

    // shared Monte Carlo knobs
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    int workers = 1;

    // newcomb
    std::string tactic = "one";        // zero | one | plus
    std::string breaker = "qutrojan";  // classical | qutrojan
    double prob_not = 0.5;

    // breakers / testers
    int n = 10;
    int first_qubit = 1;
    std::string bomb = "working";      // working | damaged
    double alpha = 0.0;

    // wiesner
    int k = 16;
    std::string variant = "swap";      // swap | hadamard
    std::string policy = "haar";       // haar | pair
    std::string forger = "uniform_guess"; // uniform_guess | measure_resend | legitimate

    // ising
    int cells = 16;
    double p = -1.0;                   // direct stay probability (used when beta_j unset)
    double beta_j = -1.0;              // temperature parameter; wins when >= 0
    long sweeps = 220000;
    long burn_in = 20000;
    std::string mode = "classical";        // classical | quantum_cell
    std::string schedule = "single_random"; // single_random | even_odd

    // identities
    double tol = 1e-10;

    // sweep support: one row per value of the swept parameter
    std::string sweep_param;           // "" = single run
    std::vector<long> sweep_values;

    std::string output_path = "-";     // "-" = stdout
};

/// Renders the complete CSV (metadata line, header, rows). Throws
/// std::invalid_argument on parameter validation failures.
std::string render_experiment_csv(const ExperimentConfig& cfg);

/// Renders and writes to cfg.output_path ("-" = `out`). Returns 0 on
/// success; on invalid parameters prints a one-line diagnostic to `err`
/// and returns 2.
int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace qglab::cli
