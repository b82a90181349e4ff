// qglab — quantum game lab command line.
//
// One subcommand per experiment; every run is fully determined by its
// flags (Monte Carlo subcommands require --seed) and writes a CSV with a
// leading '#' metadata line. Exit codes: 0 success, 2 invalid parameters.

#include "qglab/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using qglab::cli::ExperimentConfig;

void add_common(CLI::App* cmd, ExperimentConfig& cfg, bool monte_carlo) {
    cmd->set_config("--config", "", "Flat key = value file mirroring the flags");
    cmd->add_option("--out", cfg.output_path, "Output CSV path ('-' = stdout)")
        ->capture_default_str();
    if (monte_carlo) {
        cmd->add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "Base RNG seed")->required();
        cmd->add_option("--workers", cfg.workers, "Worker threads (does not affect output)")
            ->capture_default_str();
    }
}

void add_sweep(CLI::App* cmd, ExperimentConfig& cfg, const std::string& param) {
    cmd->add_option("--sweep", cfg.sweep_param,
                    "Sweep parameter name (only '" + param + "'); one CSV row per value");
    cmd->add_option("--values", cfg.sweep_values, "Swept values (comma separated)")
        ->delimiter(',');
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qglab: quantum game circuits, bomb testers, Wiesner banknotes and a "
                 "Metropolis Ising automaton, reproduced by seeded Monte Carlo and exact "
                 "computation"};
    app.require_subcommand(1);

    ExperimentConfig cfg;

    CLI::App* newcomb = app.add_subcommand("newcomb", "Two-qubit switch game joint statistics");
    newcomb->add_option("--tactic", cfg.tactic, "Upper-qubit tactic: zero|one|plus")
        ->capture_default_str();
    newcomb->add_option("--breaker", cfg.breaker, "Breaker: classical|qutrojan")
        ->capture_default_str();
    newcomb->add_option("--prob_not", cfg.prob_not, "NOT probability of the classical switch")
        ->capture_default_str();
    add_common(newcomb, cfg, true);

    CLI::App* ev = app.add_subcommand("ev-breaker", "Gradual unblocking of the switching-off strategy");
    ev->add_option("--n", cfg.n, "Unblocking steps")->capture_default_str();
    ev->add_option("--first_qubit", cfg.first_qubit, "Inspected first qubit value (0 or 1)")
        ->capture_default_str();
    add_common(ev, cfg, true);
    add_sweep(ev, cfg, "n");

    CLI::App* zeno = app.add_subcommand("bomb-zeno", "Safe bomb tester (Zeno freezing)");
    zeno->add_option("--n", cfg.n, "Unblocking steps")->capture_default_str();
    zeno->add_option("--bomb", cfg.bomb, "Bomb fuse: working|damaged")->capture_default_str();
    add_common(zeno, cfg, true);
    add_sweep(zeno, cfg, "n");

    CLI::App* anti = app.add_subcommand("bomb-antizeno", "Anti-Zeno tester exact verdict law");
    anti->add_option("--n", cfg.n, "Stages")->capture_default_str();
    anti->add_option("--alpha", cfg.alpha, "Stage gate axis parameter")->capture_default_str();
    add_common(anti, cfg, false);
    add_sweep(anti, cfg, "n");

    CLI::App* supply = app.add_subcommand("supply-demand", "Supply-demand switch tester");
    supply->add_option("--n", cfg.n, "Stages")->capture_default_str();
    supply->add_option("--bomb", cfg.bomb, "Bomb fuse: working|damaged")->capture_default_str();
    add_common(supply, cfg, true);
    add_sweep(supply, cfg, "n");

    CLI::App* wiesner = app.add_subcommand("wiesner", "Banknote identification game pass rates");
    wiesner->add_option("--k", cfg.k, "Sub-games per banknote")->capture_default_str();
    wiesner->add_option("--variant", cfg.variant, "Round circuit: swap|hadamard")
        ->capture_default_str();
    wiesner->add_option("--policy", cfg.policy, "Secret state policy: haar|pair")
        ->capture_default_str();
    wiesner
        ->add_option("--forger", cfg.forger,
                     "Claimant model: uniform_guess|measure_resend|legitimate")
        ->capture_default_str();
    add_common(wiesner, cfg, true);
    add_sweep(wiesner, cfg, "k");

    CLI::App* ising = app.add_subcommand("ising", "Metropolis automaton time series");
    ising->add_option("--cells", cfg.cells, "Chain length N")->capture_default_str();
    ising->add_option("--beta_j", cfg.beta_j, "Coupling beta*J (sets p = 1 - exp(-4 beta_j))");
    ising->add_option("--p", cfg.p, "Stay probability of an aligned cell (alternative to beta_j)");
    ising->add_option("--sweeps", cfg.sweeps, "Total sweeps")->capture_default_str();
    ising->add_option("--burn_in", cfg.burn_in, "Discarded leading sweeps")->capture_default_str();
    ising->add_option("--mode", cfg.mode, "Cell update: classical|quantum_cell")
        ->capture_default_str();
    ising->add_option("--schedule", cfg.schedule,
                      "Activation: single_random|even_odd (even_odd blinks on domain-wall "
                      "patterns and is not a Gibbs sampler)")
        ->capture_default_str();
    add_common(ising, cfg, true);

    CLI::App* identities = app.add_subcommand("identities", "Gate catalog identity checks");
    identities->add_option("--tol", cfg.tol, "Pass threshold")->capture_default_str();
    identities->add_option("--seed", cfg.seed, "Seed for the random parameter draws")
        ->capture_default_str();
    add_common(identities, cfg, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "qglab: " << e.what() << "\n";
        return 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    return qglab::cli::run_experiment(cfg, std::cout, std::cerr);
}
